#include "sdc/core_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "sdc/error.hpp"

namespace sdc {

Prepared prepare(const PointSet& ps, const ParamSet& params) {
  if (ps.size() < 2) throw ParameterError("prepare: at least two points are required");
  const std::size_t cap = ps.size() - 1;
  Prepared p;
  p.search_k = std::min<std::size_t>(static_cast<std::size_t>(params.search_neighbor_k), cap);
  p.rho_k = std::min<std::size_t>(static_cast<std::size_t>(params.rho_calculate_k), cap);
  p.iso_k = std::min<std::size_t>(static_cast<std::size_t>(params.iso_neighbor_k), cap);
  const std::size_t width = std::max({p.search_k, p.rho_k, p.iso_k});
  p.table = build_neighbor_table(ps, width, NeighborBackend::Auto, params.threads);
  p.profile = compute_profile(ps, p.table, p.rho_k, p.iso_k, p.search_k,
                              params.differential_source);
  return p;
}

bool expansion_accepts(const Prepared& prep, std::size_t a, std::size_t slot, double eps,
                       std::span<const int> cp) {
  const auto b = static_cast<std::size_t>(prep.table.indices(a)[slot]);
  const double first = prep.profile.drho.value(a, slot);
  const auto b_neighbors = prep.table.indices(b, prep.search_k);
  for (std::size_t s = 0; s < prep.search_k; ++s) {
    if (cp[static_cast<std::size_t>(b_neighbors[s])] == kIsolated) continue;
    if (std::abs(first - prep.profile.drho.value(b, s)) < eps) return true;
  }
  return false;
}

Assignment core_cluster(const PointSet& ps, const ParamSet& params, const Prepared* prep) {
  if (ps.empty()) throw ParameterError("core_cluster: empty point set");
  params.validate();
  const std::size_t n = ps.size();
  const int min_size = params.effective_min(n);
  if (n == 1) return Assignment::from_codes({1}, min_size);

  Prepared local;
  if (prep == nullptr) {
    local = prepare(ps, params);
    prep = &local;
  }
  const auto& nrho = prep->profile.nrho;
  const double eps = params.effective_eps();

  std::vector<int> cp(n, kUnclassified);
  if (params.kon) {
    for (int i : detect_isolated(prep->profile.nisrho, params.max_iso_point_rho)) {
      cp[static_cast<std::size_t>(i)] = kIsolated;
    }
  }

  std::vector<int> seeds(n);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) {
    return nrho[static_cast<std::size_t>(a)] > nrho[static_cast<std::size_t>(b)];
  });

  int cluster = 0;
  std::deque<int> frontier;
  for (int seed : seeds) {
    if (cp[static_cast<std::size_t>(seed)] != kUnclassified) continue;
    ++cluster;
    cp[static_cast<std::size_t>(seed)] = cluster;
    frontier.push_back(seed);
    while (!frontier.empty()) {
      const auto a = static_cast<std::size_t>(frontier.front());
      frontier.pop_front();
      const auto nb = prep->table.indices(a, prep->search_k);
      for (std::size_t s = 0; s < prep->search_k; ++s) {
        const int b = nb[s];
        if (cp[static_cast<std::size_t>(b)] != kUnclassified) continue;
        if (expansion_accepts(*prep, a, s, eps, cp)) {
          cp[static_cast<std::size_t>(b)] = cluster;
          frontier.push_back(b);
        }
      }
    }
  }

  Assignment result = Assignment::from_codes(std::move(cp), min_size);
  if (params.merge_enabled) result = merge_small(result, ps, min_size);
  return result;
}

Assignment merge_small(const Assignment& a, const PointSet& ps, int threshold) {
  std::vector<int> large_members;
  std::vector<int> small_members;
  bool any_large = false;
  for (std::size_t c = 1; c < a.clusters.size(); ++c) {
    const bool large = static_cast<int>(a.clusters[c].size()) >= threshold;
    any_large = any_large || large;
    auto& dst = large ? large_members : small_members;
    dst.insert(dst.end(), a.clusters[c].begin(), a.clusters[c].end());
  }

  std::vector<int> cp = a.cp;
  if (!any_large) {
    for (int& c : cp) {
      if (c > 0) c = 1;
    }
  } else if (!small_members.empty()) {
    std::sort(large_members.begin(), large_members.end());
    const auto nearest = nearest_member(ps, small_members, large_members);
    for (std::size_t q = 0; q < small_members.size(); ++q) {
      cp[static_cast<std::size_t>(small_members[q])] =
          a.cp[static_cast<std::size_t>(nearest[q])];
    }
  }
  return densify(Assignment::from_codes(std::move(cp), threshold));
}

}  // namespace sdc
