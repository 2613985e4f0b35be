#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdc/point_set.hpp"

namespace sdc {

/// Benchmark roster. The first eight form the standard noiseless suite.
enum class Dataset {
  TC,              // two concentric randomly sampled circles
  TL,              // three randomly sampled line segments
  TG,              // two Gaussians plus a triple-density block
  SQ,              // gradient square
  MR,              // mountain-river
  IG,              // three Gaussians, two tiny
  CG,              // two close Gaussians
  SDD,             // seven clusters at mixed granularities
  TripleSquare,
  MountainRiver,
  GradientSquare,
  ThreeGauss,
  ColorCard3,
  ColorCard6A,
  ColorCard6B,
};

std::string to_string(Dataset d);
/// Accepts the roster names case-insensitively (e.g. "TC", "triple_square",
/// "color_card_6a"). Throws ParameterError for anything else.
Dataset parse_dataset(const std::string& name);
/// The eight datasets of the standard suite, in report order.
const std::vector<Dataset>& standard_suite();
/// Every roster entry.
const std::vector<Dataset>& all_datasets();
/// Number of ground-truth clusters the generator emits.
int nominal_cluster_count(Dataset d);

struct GenSpec {
  Dataset name = Dataset::TC;
  std::uint64_t seed = 1;
  /// Plateau generators sit on exact lattices when set (no jitter).
  bool exact_grid = false;
};

/// Three nested square plateaus, labels 0/1/2 from the inside out. Spacing
/// of the lattice in each region is inner_spacing * (1, mid_ratio, outer_ratio).
/// The default sides put the first row of each coarser lattice one of its own
/// spacings past the last row of the finer one, which keeps the density steps
/// sharp under noise.
struct TripleSquareSpec {
  std::uint64_t seed = 1;
  double inner_spacing = 1.0;
  double mid_ratio = 2.0;
  double outer_ratio = 4.0;
  double inner_side = 17.0;
  double mid_side = 26.0;
  double outer_side = 44.0;
  double jitter = 0.05;  // fraction of the local spacing
};

/// Two dense blocks (labels 0 and 2) flanking a sparse band (label 1).
/// band_height = 0 drops the band and leaves a two-label dataset.
/// Rows of the band start one band spacing past the block below it.
struct MountainRiverSpec {
  std::uint64_t seed = 1;
  double width = 30.0;
  double block_height = 8.0;
  double band_height = 12.0;
  double block_spacing = 1.0;
  double band_spacing = 3.0;
  double jitter = 0.05;
};

/// One square on a tensor lattice whose spacing grows geometrically along
/// each axis, so density falls by `density_ratio` from one corner to the other.
struct GradientSquareSpec {
  std::uint64_t seed = 1;
  int cells = 40;
  double density_ratio = 25.0;
  double jitter = 0.05;
};

PointSet gen_triple_square(const TripleSquareSpec& spec);
PointSet gen_mountain_river(const MountainRiverSpec& spec);
PointSet gen_gradient_square(const GradientSquareSpec& spec);

/// Any roster dataset with its documented default parameterisation.
PointSet gen_suite(const GenSpec& spec);

/// Width and height of the color-card rasters, and their gray levels
/// (0-255) per pixel, row-major. Used by gen_suite and image round-trips.
struct GrayRaster {
  int width = 0;
  int height = 0;
  std::vector<int> gray;
  std::vector<int> labels;
};
GrayRaster color_card_raster(Dataset card);

/// Perturbs every coordinate with N(0, (x * d)^2) where d is the largest
/// axis range of `ps`. Labels are kept.
PointSet add_noise(const PointSet& ps, double x, std::uint64_t seed);

/// Noise stream used for the dataset generated with `seed`, kept apart from
/// the generator's own stream.
inline std::uint64_t noise_seed(std::uint64_t seed) { return seed + 1000; }

}  // namespace sdc
