#include "image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <memory>

#include "sdc/error.hpp"

namespace sdc::cli {

ImageMode parse_image_mode(const std::string& s) {
  if (s == "rgb") return ImageMode::Rgb;
  if (s == "gray" || s == "grey") return ImageMode::Gray;
  throw ParameterError("unknown image mode '" + s + "' (expected rgb or gray)");
}

namespace {

Raster read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw DataError(path + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  Raster r;
  r.width = static_cast<int>(image.width);
  r.height = static_cast<int>(image.height);
  r.channels = color ? 3 : 1;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&image);
    throw DataError(path + ": " + image.message);
  }
  r.samples.assign(buf.begin(), buf.end());
  return r;
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int pnm_int(std::istream& in, const std::string& path) {
  const std::string tok = pnm_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw DataError(path + ": malformed PNM header");
}

Raster read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  const std::string magic = pnm_token(in);
  const bool ascii = magic == "P2" || magic == "P3";
  Raster r;
  r.channels = (magic == "P3" || magic == "P6") ? 3 : 1;
  r.width = pnm_int(in, path);
  r.height = pnm_int(in, path);
  r.maxval = pnm_int(in, path);
  if (r.width == 0 || r.height == 0 || r.maxval == 0 || r.maxval > 65535) {
    throw DataError(path + ": unsupported PNM dimensions or depth");
  }
  const std::size_t count = static_cast<std::size_t>(r.width) * r.height * r.channels;
  r.samples.resize(count);
  if (ascii) {
    for (auto& s : r.samples) s = static_cast<std::uint16_t>(pnm_int(in, path));
  } else {
    const int bytes = r.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw DataError(path + ": truncated PNM data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      r.samples[i] = bytes == 2 ? static_cast<std::uint16_t>(raw[2 * i] << 8 | raw[2 * i + 1]) : raw[i];
    }
  }
  for (auto s : r.samples) {
    if (s > r.maxval) throw DataError(path + ": sample exceeds maxval");
  }
  return r;
}

}  // namespace

Raster read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  in.close();
  if (got == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0) return read_png(path);
  if (got >= 2 && sig[0] == 'P' && (sig[1] == '2' || sig[1] == '3' || sig[1] == '5' || sig[1] == '6')) {
    return read_pnm(path);
  }
  throw DataError(path + ": not a PNG, PGM or PPM image");
}

void write_pnm(const std::string& path, const Raster& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << (r.channels == 3 ? "P6" : "P5") << '\n' << r.width << ' ' << r.height << '\n' << r.maxval << '\n';
  for (auto s : r.samples) {
    if (r.maxval > 255) out.put(static_cast<char>(s >> 8));
    out.put(static_cast<char>(s & 0xff));
  }
}

void write_png(const std::string& path, const Raster& r) {
  if (r.maxval > 255) throw ParameterError("PNG output supports 8-bit samples only");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(r.width);
  image.height = static_cast<png_uint_32>(r.height);
  image.format = r.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::vector<png_byte> buf(r.samples.begin(), r.samples.end());
  if (!png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0, nullptr)) {
    throw DataError(path + ": " + image.message);
  }
}

void write_image(const std::string& path, const Raster& r) {
  std::string ext = path.size() >= 4 ? path.substr(path.size() - 4) : "";
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") write_png(path, r);
  else write_pnm(path, r);
}

PointSet image_points(const Raster& r, ImageMode mode) {
  const int feats = mode == ImageMode::Rgb ? 3 : 1;
  const std::size_t dim = 2 + static_cast<std::size_t>(feats);
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height;
  std::vector<double> coords(n * dim);
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      double* p = &coords[(static_cast<std::size_t>(y) * r.width + x) * dim];
      p[0] = x;
      p[1] = y;
      if (mode == ImageMode::Gray && r.channels == 3) {
        p[2] = 0.299 * r.sample(x, y, 0) + 0.587 * r.sample(x, y, 1) + 0.114 * r.sample(x, y, 2);
      } else {
        for (int c = 0; c < feats; ++c) p[2 + c] = r.sample(x, y, r.channels == 3 ? c : 0);
      }
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, coords[i * dim + j]);
    if (top == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) coords[i * dim + j] /= top;
  }
  return PointSet(std::move(coords), dim);
}

}  // namespace sdc::cli
