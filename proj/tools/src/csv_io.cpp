#include "csv_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "sdc/error.hpp"

namespace sdc::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> to_double(const std::string& cell) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) return std::nullopt;
  return v;
}

std::optional<int> to_int(const std::string& cell) {
  int v = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) return std::nullopt;
  return v;
}

std::string where(const std::string& source, std::size_t row, std::size_t col) {
  return source + ": row " + std::to_string(row) + ", column " + std::to_string(col);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

}  // namespace

PointSet parse_csv(std::istream& in, const std::string& source) {
  std::vector<double> coords;
  std::vector<int> labels;
  bool labelled = false;
  std::size_t width = 0;  // cells per row, fixed by the first row
  std::size_t dim = 0;
  bool first = true;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (first) {
      first = false;
      width = cells.size();
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && to_double(c).has_value();
      if (!numeric) {
        labelled = cells.back() == "label";
        dim = labelled ? width - 1 : width;
        if (dim == 0) throw DataError(source + ": header has no feature columns");
        continue;
      }
      dim = width;
    }
    if (cells.size() != width) {
      throw DataError(where(source, row, cells.size()) + ": expected " + std::to_string(width) +
                      " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      auto v = to_double(cells[j]);
      if (!v) throw DataError(where(source, row, j + 1) + ": not a number: '" + cells[j] + "'");
      coords.push_back(*v);
    }
    if (labelled) {
      auto l = to_int(cells[dim]);
      if (!l) throw DataError(where(source, row, dim + 1) + ": not an integer label: '" + cells[dim] + "'");
      labels.push_back(*l);
    }
  }
  if (coords.empty()) throw DataError(source + ": no data rows");
  try {
    if (labelled) return PointSet(std::move(coords), dim, std::move(labels));
    return PointSet(std::move(coords), dim);
  } catch (const ParameterError& e) {
    throw DataError(source + ": " + e.what());
  }
}

PointSet read_csv(const std::string& path) {
  auto in = open_input(path);
  return parse_csv(in, path);
}

namespace {

void write_header(std::ostream& out, std::size_t dim, bool label) {
  for (std::size_t j = 0; j < dim; ++j) out << (j ? "," : "") << 'x' << j;
  if (label) out << ",label";
  out << '\n';
}

void write_row(std::ostream& out, const PointSet& ps, std::size_t i) {
  char buf[32];
  for (std::size_t j = 0; j < ps.dim(); ++j) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ps.at(i, j));
    if (j) out << ',';
    out.write(buf, end - buf);
  }
}

}  // namespace

void write_points_csv(std::ostream& out, const PointSet& ps) {
  write_header(out, ps.dim(), ps.has_labels());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    write_row(out, ps, i);
    if (ps.has_labels()) out << ',' << ps.labels()[i];
    out << '\n';
  }
}

void write_points_csv(std::ostream& out, const PointSet& ps, std::span<const int> labels) {
  if (labels.size() != ps.size()) throw ParameterError("label count does not match point count");
  write_header(out, ps.dim(), true);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    write_row(out, ps, i);
    out << ',' << labels[i] << '\n';
  }
}

std::vector<int> export_labels(std::span<const int> cp) {
  std::vector<int> out(cp.size());
  for (std::size_t i = 0; i < cp.size(); ++i) out[i] = cp[i] <= 0 ? -1 : cp[i] - 1;
  return out;
}

void write_labels_csv(std::ostream& out, std::span<const int> labels) {
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

std::vector<int> read_labels_csv(const std::string& path) {
  auto in = open_input(path);
  std::vector<int> labels;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (row == 1 && cells.size() == 2 && cells[0] == "index") continue;
    if (cells.size() != 2) throw DataError(where(path, row, cells.size()) + ": expected index,label");
    auto idx = to_int(cells[0]);
    auto lab = to_int(cells[1]);
    if (!idx) throw DataError(where(path, row, 1) + ": not an index: '" + cells[0] + "'");
    if (!lab) throw DataError(where(path, row, 2) + ": not a label: '" + cells[1] + "'");
    if (*idx != static_cast<int>(labels.size())) {
      throw DataError(where(path, row, 1) + ": expected index " + std::to_string(labels.size()));
    }
    labels.push_back(*lab);
  }
  if (labels.empty()) throw DataError(path + ": no labels");
  return labels;
}

}  // namespace sdc::cli
