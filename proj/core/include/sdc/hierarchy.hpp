#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sdc/assignment.hpp"
#include "sdc/params.hpp"
#include "sdc/point_set.hpp"

namespace sdc {

/// Where a group of isolated points was produced.
enum class IsolationStage {
  KnnPrefilter,  // kNN-mode clusters smaller than MinKNNClusterPoint
  KnnSmall,      // isolated points found while finalising a small kNN cluster
  Refinement,    // isolated points found while finalising a refined subset
  Global,        // all isolated points pooled together (IOC)
};

std::string to_string(IsolationStage s);

struct IsolatedGroup {
  IsolationStage stage = IsolationStage::Global;
  std::vector<int> points;
};

/// One processed entry of the refinement queue.
struct RefinementStep {
  std::size_t subset_size = 0;
  double eps = 0.0;
  std::size_t parts = 0;  // clusters produced; 1 means the subset was finalised
};

struct HierarchyResult {
  /// Codes over the whole input: 0 for isolated points, clusters numbered
  /// by descending size (ties by finalisation order).
  Assignment assignment;
  /// With IOC a single Global group; otherwise one group per stage/subset.
  std::vector<IsolatedGroup> isolated_groups;
  std::vector<RefinementStep> refinements;
  /// Set when redistribution was requested but no non-isolated cluster existed.
  bool redistribution_skipped = false;
};

/// Hierarchical refinement with a fixed eps: kNN-mode clustering, then
/// repeated SD-mode refinement of every cluster until a refinement yields a
/// single cluster, which is finalised with isolated-point detection.
HierarchyResult sdc_hsdd_nd(const PointSet& ps, const ParamSet& params);

/// Record of one adapt_eps evaluation.
struct EpsProbe {
  double eps = 0.0;
  int effective = 0;
};

struct EpsSearch {
  double eps = 0.0;
  std::vector<EpsProbe> probes;
};

/// Self-adaptive eps for the points `subset` of `ps`: walk eps upward from
/// Mineps in steps of `adjust`, stopping at the first drop in the number of
/// effective clusters (returning the previous eps) or once past Maxeps.
double adapt_eps(std::span<const int> subset, const PointSet& ps, const ParamSet& params);
EpsSearch adapt_eps_traced(std::span<const int> subset, const PointSet& ps,
                           const ParamSet& params);

/// The full pipeline: kNN pre-clustering with MinKNNClusterPoint filtering,
/// direct finalisation of small clusters, self-adaptive hierarchical
/// refinement of the rest, then IOC pooling or redistribution of isolated points.
HierarchyResult sdc_hsdd_ndsa(const PointSet& ps, const ParamSet& params);

/// Moves every isolated point to the cluster of its nearest non-isolated
/// point. Returns the input unchanged (and sets `skipped`) if no
/// non-isolated point exists.
Assignment redistribute_isolated(const Assignment& a, const PointSet& ps, bool* skipped = nullptr);

}  // namespace sdc
