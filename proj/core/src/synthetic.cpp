#include "sdc/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "sdc/error.hpp"

namespace sdc {

namespace {

struct Entry {
  Dataset id;
  const char* name;
  int clusters;
};

constexpr Entry kRoster[] = {
    {Dataset::TC, "TC", 2},
    {Dataset::TL, "TL", 3},
    {Dataset::TG, "TG", 5},
    {Dataset::SQ, "SQ", 1},
    {Dataset::MR, "MR", 3},
    {Dataset::IG, "IG", 3},
    {Dataset::CG, "CG", 2},
    {Dataset::SDD, "SDD", 7},
    {Dataset::TripleSquare, "TRIPLE_SQUARE", 3},
    {Dataset::MountainRiver, "MOUNTAIN_RIVER", 3},
    {Dataset::GradientSquare, "GRADIENT_SQUARE", 1},
    {Dataset::ThreeGauss, "THREE_GAUSS", 3},
    {Dataset::ColorCard3, "COLOR_CARD_3", 3},
    {Dataset::ColorCard6A, "COLOR_CARD_6A", 6},
    {Dataset::ColorCard6B, "COLOR_CARD_6B", 6},
};

const Entry& entry(Dataset d) {
  for (const auto& e : kRoster) {
    if (e.id == d) return e;
  }
  throw ParameterError("unknown dataset id");
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Accumulates labelled 2D points.
class Builder {
 public:
  explicit Builder(std::mt19937_64 rng) : rng_(std::move(rng)) {}

  void add(double x, double y, int label) {
    coords_.push_back(x);
    coords_.push_back(y);
    labels_.push_back(label);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(rng_); }

  double jittered(double v, double amplitude) {
    return amplitude > 0.0 ? v + uniform(-amplitude, amplitude) : v;
  }

  // Cell-centred lattice over [x0,x1] x [y0,y1].
  void lattice(double x0, double y0, double x1, double y1, double spacing, int label,
               double jitter) {
    const int nx = static_cast<int>(std::lround((x1 - x0) / spacing));
    const int ny = static_cast<int>(std::lround((y1 - y0) / spacing));
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const double x = x0 + (i + 0.5) * spacing;
        const double y = y0 + (j + 0.5) * spacing;
        add(jittered(x, jitter * spacing), jittered(y, jitter * spacing), label);
      }
    }
  }

  // Square annulus of lattice points at anchor + k * spacing that lie within
  // `half - spacing / 2` of the origin, leaving out the square |x|, |y| <= anchor.
  // Returns the outermost row.
  double ring_lattice(double anchor, double spacing, double half, int label, double jitter) {
    const double tol = 1e-9 * spacing;
    const double reach = half - spacing / 2 + tol;
    std::vector<double> pos;
    const auto k0 = static_cast<long>(std::ceil((-reach - anchor) / spacing));
    for (long k = k0; anchor + static_cast<double>(k) * spacing <= reach; ++k) {
      pos.push_back(anchor + static_cast<double>(k) * spacing);
    }
    for (double y : pos) {
      for (double x : pos) {
        if (std::abs(x) <= anchor + tol && std::abs(y) <= anchor + tol) continue;
        add(jittered(x, jitter * spacing), jittered(y, jitter * spacing), label);
      }
    }
    return pos.empty() ? anchor : pos.back();
  }

  void gaussian(double cx, double cy, double sd, int count, int label) {
    for (int i = 0; i < count; ++i) add(normal(cx, sd), normal(cy, sd), label);
  }

  // Gaussian sampled on a jittered rings x spokes grid of the (radial
  // quantile, angle) square: same distribution as gaussian(), far less clumping.
  void stratified_gaussian(double cx, double cy, double sd, int rings, int spokes, double jitter,
                           int label) {
    for (int i = 0; i < rings; ++i) {
      for (int k = 0; k < spokes; ++k) {
        const double u = (jittered(i + 0.5, jitter)) / rings;
        const double v = (jittered(k + 0.5, jitter)) / spokes;
        const double r = sd * std::sqrt(-2.0 * std::log(1.0 - u));
        const double t = 2.0 * std::numbers::pi * v;
        add(cx + r * std::cos(t), cy + r * std::sin(t), label);
      }
    }
  }

  // Band of `rows` concentric circles, `spacing` apart radially and (roughly)
  // along each circle, with every point jittered by up to jitter * spacing.
  void ring_band(double r0, int rows, double spacing, double jitter, int label) {
    const double amp = jitter * spacing;
    for (int k = 0; k < rows; ++k) {
      const double r = r0 + k * spacing;
      const int m = static_cast<int>(std::lround(2.0 * std::numbers::pi * r / spacing));
      for (int i = 0; i < m; ++i) {
        const double t = (i + 0.5) * 2.0 * std::numbers::pi / m;
        const double rr = jittered(r, amp);
        const double tt = jittered(t, amp / r);
        add(rr * std::cos(tt), rr * std::sin(tt), label);
      }
    }
  }

  // Straight strip of `rows` parallel lines centred on the segment, points
  // `spacing` apart along and across it, jittered like ring_band.
  void strip(double x0, double y0, double x1, double y1, int rows, double spacing,
             double jitter, int label) {
    const double len = std::hypot(x1 - x0, y1 - y0);
    const double ux = (x1 - x0) / len;
    const double uy = (y1 - y0) / len;
    const int m = static_cast<int>(len / spacing);
    const double amp = jitter * spacing;
    for (int k = 0; k < rows; ++k) {
      for (int i = 0; i < m; ++i) {
        const double t = jittered((i + 0.5) * spacing, amp);
        const double o = jittered((k - (rows - 1) / 2.0) * spacing, amp);
        add(x0 + t * ux - o * uy, y0 + t * uy + o * ux, label);
      }
    }
  }

  // Appends another labelled 2D set, scaled then shifted, with labels offset.
  void append(const PointSet& ps, double scale, double dx, double dy, int label_offset) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      add(ps.at(i, 0) * scale + dx, ps.at(i, 1) * scale + dy, ps.labels()[i] + label_offset);
    }
  }

  PointSet build() && { return PointSet(std::move(coords_), 2, std::move(labels_)); }

 private:
  std::mt19937_64 rng_;
  std::vector<double> coords_;
  std::vector<int> labels_;
};

PointSet raster_points(const GrayRaster& r) {
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(r.width * r.height) * 3);
  const int gmax = std::max(1, *std::max_element(r.gray.begin(), r.gray.end()));
  const double xmax = std::max(1, r.width - 1);
  const double ymax = std::max(1, r.height - 1);
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      coords.push_back(x / xmax);
      coords.push_back(y / ymax);
      coords.push_back(static_cast<double>(r.gray[static_cast<std::size_t>(y * r.width + x)]) /
                       gmax);
    }
  }
  return PointSet(std::move(coords), 3, r.labels);
}

PointSet gaussians_with_small(std::uint64_t seed, Dataset id, double small_offset) {
  Builder b(make_rng(seed, static_cast<std::uint64_t>(id)));
  b.stratified_gaussian(0.0, 0.0, 1.0, 20, 30, 0.3, 0);
  b.gaussian(small_offset, small_offset, 0.25, 15, 1);
  b.gaussian(-small_offset, small_offset, 0.25, 25, 2);
  return std::move(b).build();
}

}  // namespace

std::string to_string(Dataset d) { return entry(d).name; }

Dataset parse_dataset(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == ' ') c = '_';
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (const auto& e : kRoster) {
    if (key == e.name) return e.id;
  }
  throw ParameterError("unknown dataset '" + name + "'");
}

const std::vector<Dataset>& standard_suite() {
  static const std::vector<Dataset> suite = {Dataset::TC, Dataset::TL, Dataset::TG, Dataset::SQ,
                                             Dataset::MR, Dataset::IG, Dataset::CG, Dataset::SDD};
  return suite;
}

const std::vector<Dataset>& all_datasets() {
  static const std::vector<Dataset> all = [] {
    std::vector<Dataset> v;
    for (const auto& e : kRoster) v.push_back(e.id);
    return v;
  }();
  return all;
}

int nominal_cluster_count(Dataset d) { return entry(d).clusters; }

PointSet gen_triple_square(const TripleSquareSpec& spec) {
  Builder b(make_rng(spec.seed, 101));
  const double s0 = spec.inner_spacing;
  const double s1 = s0 * spec.mid_ratio;
  const double s2 = s0 * spec.outer_ratio;
  const double a = spec.inner_side / 2;
  b.lattice(-a, -a, a, a, s0, 0, spec.jitter);
  // Each coarser lattice is anchored on the last row of the finer one, so
  // equal ratios continue a single lattice.
  const double last0 = -a + (std::lround(spec.inner_side / s0) - 0.5) * s0;
  const double last1 = b.ring_lattice(last0, s1, spec.mid_side / 2, 1, spec.jitter);
  b.ring_lattice(last1, s2, spec.outer_side / 2, 2, spec.jitter);
  return std::move(b).build();
}

PointSet gen_mountain_river(const MountainRiverSpec& spec) {
  Builder b(make_rng(spec.seed, 102));
  const double w = spec.width;
  const double h = spec.block_height;
  const double r = spec.band_height;
  // The band and the upper block each start one of their own spacings past
  // the last row below them.
  const double shift = (spec.band_spacing - spec.block_spacing) / 2;
  b.lattice(0, 0, w, h, spec.block_spacing, 0, spec.jitter);
  if (r > 0) b.lattice(0, h + shift, w, h + r + shift, spec.band_spacing, 1, spec.jitter);
  const double top = r > 0 ? h + r + 2 * shift : h;
  b.lattice(0, top, w, top + h, spec.block_spacing, r > 0 ? 2 : 1, spec.jitter);
  return std::move(b).build();
}

PointSet gen_gradient_square(const GradientSquareSpec& spec) {
  if (spec.cells < 2) throw ParameterError("gradient square needs at least 2 cells per side");
  Builder b(make_rng(spec.seed, 103));
  const int m = spec.cells;
  // Density ~ 1 / (h_x * h_y); across the diagonal it changes by q^(2(m-1)).
  const double q = std::pow(spec.density_ratio, 1.0 / (2.0 * (m - 1)));
  std::vector<double> pos(static_cast<std::size_t>(m));
  std::vector<double> step(static_cast<std::size_t>(m));
  double x = 0.0;
  for (int i = 0; i < m; ++i) {
    step[static_cast<std::size_t>(i)] = std::pow(q, i);
    pos[static_cast<std::size_t>(i)] = x;
    x += step[static_cast<std::size_t>(i)];
  }
  const double unit = (m - 1) / pos.back();
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      b.add(b.jittered(pos[ui] * unit, spec.jitter * step[ui] * unit),
            b.jittered(pos[uj] * unit, spec.jitter * step[uj] * unit), 0);
    }
  }
  return std::move(b).build();
}

GrayRaster color_card_raster(Dataset card) {
  GrayRaster r;
  r.width = 60;
  r.height = 12;
  // Each band: [start column, end column), start gray, end gray (equal for flat bands).
  struct Band {
    int x0, x1, g0, g1;
  };
  std::vector<Band> bands;
  switch (card) {
    case Dataset::ColorCard3:
      bands = {{0, 20, 0, 0}, {20, 40, 0, 255}, {40, 60, 255, 255}};
      break;
    case Dataset::ColorCard6A:
      bands = {{0, 10, 0, 0},       {10, 20, 80, 80},   {20, 30, 100, 100},
               {30, 40, 160, 160}, {40, 50, 180, 180}, {50, 60, 255, 255}};
      break;
    case Dataset::ColorCard6B:
      bands = {{0, 10, 0, 0},       {10, 20, 30, 130},  {20, 30, 165, 165},
               {30, 40, 185, 185}, {40, 50, 225, 225}, {50, 60, 245, 245}};
      break;
    default:
      throw ParameterError("not a color card: " + to_string(card));
  }
  r.gray.resize(static_cast<std::size_t>(r.width * r.height));
  r.labels.resize(r.gray.size());
  for (int y = 0; y < r.height; ++y) {
    for (std::size_t k = 0; k < bands.size(); ++k) {
      const Band& bd = bands[k];
      for (int x = bd.x0; x < bd.x1; ++x) {
        const double t = bd.x1 - bd.x0 > 1 ? double(x - bd.x0) / (bd.x1 - bd.x0 - 1) : 0.0;
        const auto at = static_cast<std::size_t>(y * r.width + x);
        r.gray[at] = static_cast<int>(std::lround(bd.g0 + t * (bd.g1 - bd.g0)));
        r.labels[at] = static_cast<int>(k);
      }
    }
  }
  return r;
}

PointSet gen_suite(const GenSpec& spec) {
  const double jitter_square = spec.exact_grid ? 0.0 : 0.05;
  const double jitter_gradient = spec.exact_grid ? 0.0 : 0.05;
  const auto stream = static_cast<std::uint64_t>(spec.name);
  switch (spec.name) {
    case Dataset::TC: {
      Builder b(make_rng(spec.seed, stream));
      b.ring_band(1.0, 5, 0.05, 0.1, 0);
      b.ring_band(2.0, 5, 0.05, 0.1, 1);
      return std::move(b).build();
    }
    case Dataset::TL: {
      Builder b(make_rng(spec.seed, stream));
      b.strip(0.0, 0.0, 4.0, 0.0, 6, 0.04, 0.1, 0);
      b.strip(0.0, 1.0, 4.0, 1.4, 6, 0.04, 0.1, 1);
      b.strip(0.0, 2.4, 4.0, 2.0, 6, 0.04, 0.1, 2);
      return std::move(b).build();
    }
    case Dataset::TG: {
      Builder b(make_rng(spec.seed, stream));
      b.gaussian(-50.0, 40.0, 4.0, 300, 3);
      b.gaussian(-27.0, 60.0, 4.0, 300, 4);
      TripleSquareSpec ts;
      ts.seed = spec.seed;
      ts.jitter = jitter_square;
      b.append(gen_triple_square(ts), 1.0, 0.0, 0.0, 0);
      return std::move(b).build();
    }
    case Dataset::SQ:
    case Dataset::GradientSquare: {
      GradientSquareSpec gs;
      gs.seed = spec.seed;
      gs.jitter = jitter_gradient;
      return gen_gradient_square(gs);
    }
    case Dataset::MR:
    case Dataset::MountainRiver: {
      MountainRiverSpec mr;
      mr.seed = spec.seed;
      mr.jitter = jitter_square;
      return gen_mountain_river(mr);
    }
    case Dataset::TripleSquare: {
      TripleSquareSpec ts;
      ts.seed = spec.seed;
      ts.jitter = jitter_square;
      return gen_triple_square(ts);
    }
    case Dataset::IG:
      return gaussians_with_small(spec.seed, spec.name, 4.5);
    case Dataset::ThreeGauss:
      return gaussians_with_small(spec.seed, spec.name, 4.0);
    case Dataset::CG: {
      Builder b(make_rng(spec.seed, stream));
      b.gaussian(0.0, 0.0, 1.0, 800, 0);
      b.gaussian(6.5, 0.0, 1.0, 800, 1);
      return std::move(b).build();
    }
    case Dataset::SDD: {
      Builder b(make_rng(spec.seed, stream));
      TripleSquareSpec ts;
      ts.seed = spec.seed;
      ts.jitter = jitter_square;
      b.append(gen_triple_square(ts), 1.0, 0.0, 0.0, 0);
      MountainRiverSpec mr;
      mr.seed = spec.seed;
      mr.jitter = jitter_square;
      b.append(gen_mountain_river(mr), 1.5, 34.0, -24.0, 3);
      GradientSquareSpec gs;
      gs.seed = spec.seed;
      gs.jitter = jitter_gradient;
      b.append(gen_gradient_square(gs), 1.0, -24.0, -73.0, 6);
      return std::move(b).build();
    }
    case Dataset::ColorCard3:
    case Dataset::ColorCard6A:
    case Dataset::ColorCard6B:
      return raster_points(color_card_raster(spec.name));
  }
  throw ParameterError("unknown dataset");
}

PointSet add_noise(const PointSet& ps, double x, std::uint64_t seed) {
  if (x < 0.0) throw ParameterError("noise level must be non-negative");
  if (x == 0.0) return ps;
  auto [lo, hi] = ps.bounds();
  double d = 0.0;
  for (std::size_t j = 0; j < ps.dim(); ++j) d = std::max(d, hi[j] - lo[j]);
  if (d == 0.0) return ps;
  std::mt19937_64 rng = make_rng(seed, 0x6e6f697365ULL);
  std::normal_distribution<double> noise(0.0, x * d);
  std::vector<double> coords = ps.coords();
  for (double& v : coords) v += noise(rng);
  return PointSet(std::move(coords), ps.dim(), ps.maybe_labels());
}

}  // namespace sdc
