#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sdc/assignment.hpp"
#include "sdc/density.hpp"
#include "sdc/neighbors.hpp"
#include "sdc/params.hpp"
#include "sdc/point_set.hpp"

namespace sdc {

/// Neighbour table and density profile for one point set, with the
/// neighbour counts actually used (clamped to n - 1 for tiny inputs).
struct Prepared {
  NeighborTable table;
  DensityProfile profile;
  std::size_t search_k = 0;
  std::size_t rho_k = 0;
  std::size_t iso_k = 0;
};

/// Builds the table and profile for `ps`. Requires ps.size() >= 2.
Prepared prepare(const PointSet& ps, const ParamSet& params);

/// The secondary directed differential test for absorbing b, the
/// `slot`-th neighbour of a: some neighbour e of b with cp[e] != 0 satisfies
/// |drho[a][b] - drho[b][e]| < eps.
bool expansion_accepts(const Prepared& prep, std::size_t a, std::size_t slot, double eps,
                       std::span<const int> cp);

/// Seed-and-expand clustering. Seeds are taken in descending Nrho order
/// (ties by index) and expanded breadth-first. With params.kon the
/// isolated points form cluster 0 first; with params.merge_enabled small
/// clusters are merged before returning. `prep`, when given, must have
/// been built from `ps` with the same neighbour counts.
Assignment core_cluster(const PointSet& ps, const ParamSet& params,
                        const Prepared* prep = nullptr);

/// Reassigns members of non-isolated clusters smaller than `threshold` to
/// the cluster of their nearest member of a cluster that reaches it. If none
/// reaches it, every non-isolated point joins one cluster.
Assignment merge_small(const Assignment& a, const PointSet& ps, int threshold);

}  // namespace sdc
