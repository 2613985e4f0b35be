#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sdc/density.hpp"

namespace sdc {

/// SD expands under the secondary-differential test; KNN accepts every
/// expansion (equivalent to eps = 4) and reduces to k-NN reachability.
enum class Mode { SD, KNN };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// Every tunable coefficient of the clustering pipeline, with defaults.
struct ParamSet {
  int search_neighbor_k = 7;
  int rho_calculate_k = 4;
  int iso_neighbor_k = 4;
  double max_iso_point_rho = 0.07;
  int min_cluster_point = 35;
  int min_knn_cluster_point = 7;
  double eps = 0.075;
  double min_eps = 0.045;
  double max_eps = 0.075;
  double adjust = 0.005;
  std::optional<double> fraction_f;  // unset: minimum cluster size is min_cluster_point

  Mode mode = Mode::SD;
  bool kon = true;                    // isolated-point detection inside a core run
  bool ioc = true;                    // one global isolated cluster vs. per-stage groups
  bool merge_enabled = true;
  bool redistribute_isolated = false;

  DifferentialSource differential_source = DifferentialSource::MaxNormalized;
  std::size_t threads = 0;  // 0: SDC_THREADS or hardware concurrency

  /// Throws ParameterError on any violated invariant.
  void validate() const;

  /// Largest neighbour count any stage needs.
  int max_k() const;

  /// max(min_cluster_point, ceil((1 - f) * n)) when fraction_f is set.
  int effective_min(std::size_t n) const;

  /// The acceptance threshold actually used: 4 in KNN mode, eps otherwise.
  double effective_eps() const { return mode == Mode::KNN ? 4.0 : eps; }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

}  // namespace sdc
