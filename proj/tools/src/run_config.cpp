#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sdc/error.hpp"

namespace sdc::cli {

namespace {

// Shortest text that parses back to the same double.
std::string fmt_real(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

double parse_real(const std::string& key, const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParameterError(key + ": not a number: '" + s + "'");
  }
  return v;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParameterError(key + ": not an integer: '" + s + "'");
  }
  return v;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

ConfigField text(std::string key, std::string help, std::string RunConfig::*member) {
  return {key, std::move(help), false, false,
          [member](const RunConfig& c) -> std::optional<std::string> {
            if ((c.*member).empty()) return std::nullopt;
            return c.*member;
          },
          [member](RunConfig& c, const std::string& v) { c.*member = v; }};
}

ConfigField int_param(std::string key, std::string help, int ParamSet::*member) {
  return {key, std::move(help), true, false,
          [member](const RunConfig& c) -> std::optional<std::string> {
            return std::to_string(c.params.*member);
          },
          [key, member](RunConfig& c, const std::string& v) {
            c.params.*member = parse_integer<int>(key, v);
          }};
}

ConfigField real_param(std::string key, std::string help, double ParamSet::*member) {
  return {key, std::move(help), true, false,
          [member](const RunConfig& c) -> std::optional<std::string> {
            return fmt_real(c.params.*member);
          },
          [key, member](RunConfig& c, const std::string& v) { c.params.*member = parse_real(key, v); }};
}

ConfigField bool_param(std::string key, std::string help, bool ParamSet::*member) {
  return {key, std::move(help), true, true,
          [member](const RunConfig& c) -> std::optional<std::string> {
            return fmt_bool(c.params.*member);
          },
          [member](RunConfig& c, const std::string& v) { c.params.*member = parse_bool(v); }};
}

std::vector<ConfigField> make_fields() {
  std::vector<ConfigField> f;
  f.push_back(text("input", "CSV file of points (optional trailing `label` column)", &RunConfig::input));
  f.push_back(text("image", "PNG, PGM or PPM image; one point per pixel", &RunConfig::image));
  f.push_back({"image-mode", "image features: rgb (x,y,R,G,B) or gray (x,y,gray)", false, false,
               [](const RunConfig& c) -> std::optional<std::string> {
                 return c.image_mode == ImageMode::Rgb ? "rgb" : "gray";
               },
               [](RunConfig& c, const std::string& v) { c.image_mode = parse_image_mode(lower(v)); }});
  f.push_back({"gen", "generate a roster dataset instead of reading a file", false, false,
               [](const RunConfig& c) -> std::optional<std::string> {
                 if (!c.gen) return std::nullopt;
                 return to_string(*c.gen);
               },
               [](RunConfig& c, const std::string& v) { c.gen = parse_dataset(v); }});
  f.push_back({"seed", "generator and noise seed", false, false,
               [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.seed); },
               [](RunConfig& c, const std::string& v) { c.seed = parse_integer<std::uint64_t>("seed", v); }});
  f.push_back({"noise", "Gaussian noise level x (sd = x * largest axis range)", false, false,
               [](const RunConfig& c) -> std::optional<std::string> { return fmt_real(c.noise); },
               [](RunConfig& c, const std::string& v) { c.noise = parse_real("noise", v); }});
  f.push_back({"minmax", "rescale every axis to [0,1] before clustering", false, true,
               [](const RunConfig& c) -> std::optional<std::string> { return fmt_bool(c.minmax); },
               [](RunConfig& c, const std::string& v) { c.minmax = parse_bool(v); }});
  f.push_back(text("labels", "write index,label rows here (isolated = -1)", &RunConfig::labels_out));
  f.push_back(text("summary", "write the JSON summary here instead of stdout", &RunConfig::summary_out));
  f.push_back(text("points", "write coordinates with their labels here", &RunConfig::points_out));

  f.push_back(int_param("search-neighbor-k", "neighbours searched during expansion", &ParamSet::search_neighbor_k));
  f.push_back(int_param("rho-calculate-k", "neighbours averaged for the density", &ParamSet::rho_calculate_k));
  f.push_back(int_param("iso-neighbor-k", "neighbours averaged for the isolation density", &ParamSet::iso_neighbor_k));
  f.push_back(real_param("max-iso-point-rho", "isolation threshold on the mean-normalised density", &ParamSet::max_iso_point_rho));
  f.push_back(int_param("min-cluster-point", "minimum size of an effective cluster", &ParamSet::min_cluster_point));
  f.push_back(int_param("min-knn-cluster-point", "minimum cluster size in kNN mode", &ParamSet::min_knn_cluster_point));
  f.push_back(real_param("eps", "secondary-differential threshold for single core runs", &ParamSet::eps));
  f.push_back(real_param("min-eps", "smallest eps tried by the self-adaptive search", &ParamSet::min_eps));
  f.push_back(real_param("max-eps", "largest eps tried by the self-adaptive search", &ParamSet::max_eps));
  f.push_back(real_param("adjust", "eps step of the self-adaptive search", &ParamSet::adjust));
  f.push_back({"fraction-f", "minimum cluster size becomes max(min-cluster-point, (1-f)N)", true, false,
               [](const RunConfig& c) -> std::optional<std::string> {
                 if (!c.params.fraction_f) return std::nullopt;
                 return fmt_real(*c.params.fraction_f);
               },
               [](RunConfig& c, const std::string& v) { c.params.fraction_f = parse_real("fraction-f", v); }});
  f.push_back({"mode", "core expansion mode: sd or knn", true, false,
               [](const RunConfig& c) -> std::optional<std::string> { return lower(to_string(c.params.mode)); },
               [](RunConfig& c, const std::string& v) { c.params.mode = parse_mode(v); }});
  f.push_back(bool_param("kon", "detect isolated points", &ParamSet::kon));
  f.push_back(bool_param("ioc", "pool all isolated points into one cluster", &ParamSet::ioc));
  f.push_back(bool_param("merge-enabled", "merge clusters below the minimum size", &ParamSet::merge_enabled));
  f.push_back(bool_param("redistribute-isolated", "move isolated points to the nearest cluster", &ParamSet::redistribute_isolated));
  f.push_back({"differential-source", "density behind the differentials: max (Nrho) or mean (Nisrho)", true, false,
               [](const RunConfig& c) -> std::optional<std::string> {
                 return c.params.differential_source == DifferentialSource::MaxNormalized ? "max" : "mean";
               },
               [](RunConfig& c, const std::string& v) {
                 const std::string s = lower(v);
                 if (s == "max") c.params.differential_source = DifferentialSource::MaxNormalized;
                 else if (s == "mean") c.params.differential_source = DifferentialSource::MeanNormalized;
                 else throw ParameterError("differential-source: expected max or mean, got '" + v + "'");
               }});
  f.push_back({"threads", "worker threads (0: SDC_THREADS or all cores)", true, false,
               [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.params.threads); },
               [](RunConfig& c, const std::string& v) { c.params.threads = parse_integer<std::size_t>("threads", v); }});
  return f;
}

}  // namespace

bool parse_bool(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v.empty() || v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ParameterError("expected a boolean, got '" + s + "'");
}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = make_fields();
  return fields;
}

std::string to_text(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& f : config_fields()) {
    if (auto v = f.get(cfg)) out << f.key << " = " << *v << '\n';
  }
  return out.str();
}

RunConfig parse_config(const std::string& text, const std::string& source, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  const auto& fields = config_fields();
  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParameterError(source + ":" + std::to_string(row) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    auto it = std::find_if(fields.begin(), fields.end(), [&](const ConfigField& f) { return f.key == key; });
    if (it == fields.end()) {
      throw ParameterError(source + ":" + std::to_string(row) + ": unknown key '" + key + "'");
    }
    try {
      it->set(base, value);
    } catch (const ParameterError& e) {
      throw ParameterError(source + ":" + std::to_string(row) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, std::move(base));
}

}  // namespace sdc::cli
