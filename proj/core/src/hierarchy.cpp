#include "sdc/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

#include "sdc/core_cluster.hpp"
#include "sdc/error.hpp"
#include "sdc/neighbors.hpp"

namespace sdc {

std::string to_string(IsolationStage s) {
  switch (s) {
    case IsolationStage::KnnPrefilter: return "knn-prefilter";
    case IsolationStage::KnnSmall: return "knn-small";
    case IsolationStage::Refinement: return "refinement";
    case IsolationStage::Global: return "global";
  }
  return "unknown";
}

namespace {

// A subset of the input together with its own neighbour table and densities.
// Densities are recomputed on the subset, never sliced from the parent.
struct Subset {
  std::vector<int> members;  // global indices
  PointSet points;
  std::optional<Prepared> prep;

  Subset(const PointSet& ps, std::vector<int> m, const ParamSet& params)
      : members(std::move(m)), points(ps.subset(members)) {
    if (members.size() >= 2) prep = prepare(points, params);
  }

  const Prepared* prepared() const { return prep ? &*prep : nullptr; }

  Assignment cluster(const ParamSet& params) const {
    return core_cluster(points, params, prepared());
  }

  std::vector<int> to_global(const std::vector<int>& local) const {
    std::vector<int> out(local.size());
    for (std::size_t i = 0; i < local.size(); ++i) {
      out[i] = members[static_cast<std::size_t>(local[i])];
    }
    return out;
  }
};

EpsSearch search_eps(const Subset& s, const ParamSet& params) {
  EpsSearch out;
  ParamSet probe = params;
  probe.mode = Mode::SD;
  probe.kon = false;
  probe.merge_enabled = false;
  const int threshold = params.effective_min(s.members.size());
  int best = 0;
  for (int step = 0;; ++step) {
    probe.eps = params.min_eps + step * params.adjust;
    const int effective = count_effective(s.cluster(probe), threshold);
    out.probes.push_back({probe.eps, effective});
    if (effective < best) {
      out.eps = params.min_eps + (step - 1) * params.adjust;
      return out;
    }
    best = effective;
    if (params.min_eps + (step + 1) * params.adjust > params.max_eps + 1e-12) {
      out.eps = params.max_eps;
      return out;
    }
  }
}

class Pipeline {
 public:
  Pipeline(const PointSet& ps, const ParamSet& params) : ps_(ps), params_(params) {}

  void add_isolated(std::vector<int> points, IsolationStage stage) {
    if (points.empty()) return;
    if (params_.ioc) {
      pooled_.insert(pooled_.end(), points.begin(), points.end());
    } else {
      groups_.push_back({stage, std::move(points)});
    }
  }

  void add_final(std::vector<int> cluster) {
    if (!cluster.empty()) final_.push_back(std::move(cluster));
  }

  // Runs one core pass on the subset and records its clusters as final.
  void finalize(const Subset& s, const ParamSet& p, IsolationStage stage) {
    const Assignment a = s.cluster(p);
    add_isolated(s.to_global(a.isolated()), stage);
    for (std::size_t c = 1; c < a.clusters.size(); ++c) add_final(s.to_global(a.clusters[c]));
  }

  void record(RefinementStep step) { steps_.push_back(step); }

  HierarchyResult finish() {
    const std::size_t n = ps_.size();
    HierarchyResult out;
    if (params_.ioc) {
      std::sort(pooled_.begin(), pooled_.end());
      if (!pooled_.empty()) groups_.push_back({IsolationStage::Global, pooled_});
    }

    std::vector<int> cp(n, kIsolated);
    for (std::size_t c = 0; c < final_.size(); ++c) {
      for (int i : final_[c]) cp[static_cast<std::size_t>(i)] = static_cast<int>(c) + 1;
    }
    Assignment a = Assignment::from_codes(std::move(cp), params_.effective_min(n));

    if (params_.redistribute_isolated && !a.isolated().empty()) {
      bool skipped = false;
      a = redistribute_isolated(a, ps_, &skipped);
      out.redistribution_skipped = skipped;
      if (!skipped) groups_.clear();
    }

    // Relabel by descending size; stable, so ties keep finalisation order.
    std::vector<std::size_t> order(a.clusters.size() - 1);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return a.clusters[x].size() > a.clusters[y].size();
    });
    std::vector<int> remap(a.clusters.size(), kIsolated);
    for (std::size_t r = 0; r < order.size(); ++r) remap[order[r]] = static_cast<int>(r) + 1;
    std::vector<int> relabeled(n);
    for (std::size_t i = 0; i < n; ++i) {
      relabeled[i] = remap[static_cast<std::size_t>(a.cp[i])];
    }
    out.assignment = Assignment::from_codes(std::move(relabeled), a.effective_min);
    out.isolated_groups = std::move(groups_);
    out.refinements = std::move(steps_);
    return out;
  }

 private:
  const PointSet& ps_;
  const ParamSet& params_;
  std::vector<std::vector<int>> final_;
  std::vector<int> pooled_;
  std::vector<IsolatedGroup> groups_;
  std::vector<RefinementStep> steps_;
};

std::vector<int> all_indices(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void check_input(const PointSet& ps, const ParamSet& params) {
  if (ps.empty()) throw ParameterError("clustering requires at least one point");
  params.validate();
}

// Refines queued subsets until every one yields a single cluster.
// `choose_eps` picks the SD threshold for a subset.
template <typename ChooseEps>
void refine(Pipeline& pipe, const PointSet& ps, const ParamSet& params,
            std::deque<std::vector<int>> queue, ChooseEps choose_eps) {
  while (!queue.empty()) {
    const Subset s(ps, std::move(queue.front()), params);
    queue.pop_front();

    ParamSet sd = params;
    sd.mode = Mode::SD;
    sd.kon = false;
    sd.merge_enabled = true;
    sd.eps = choose_eps(s);
    const Assignment t = s.cluster(sd);
    pipe.record({s.members.size(), sd.eps, t.cluster_count()});

    if (t.cluster_count() <= 1) {
      ParamSet fin = sd;
      fin.kon = true;
      pipe.finalize(s, fin, IsolationStage::Refinement);
    } else {
      for (std::size_t c = 1; c < t.clusters.size(); ++c) {
        queue.push_back(s.to_global(t.clusters[c]));
      }
    }
  }
}

}  // namespace

HierarchyResult sdc_hsdd_nd(const PointSet& ps, const ParamSet& params) {
  check_input(ps, params);
  Pipeline pipe(ps, params);

  ParamSet knn = params;
  knn.mode = Mode::KNN;
  knn.kon = false;
  knn.merge_enabled = true;
  const Subset whole(ps, all_indices(ps.size()), params);
  const Assignment first = whole.cluster(knn);

  std::deque<std::vector<int>> queue;
  for (std::size_t c = 1; c < first.clusters.size(); ++c) queue.push_back(first.clusters[c]);
  refine(pipe, ps, params, std::move(queue), [&](const Subset&) { return params.eps; });
  return pipe.finish();
}

EpsSearch adapt_eps_traced(std::span<const int> subset, const PointSet& ps,
                           const ParamSet& params) {
  params.validate();
  if (subset.empty()) throw ParameterError("adapt_eps: empty subset");
  const Subset s(ps, std::vector<int>(subset.begin(), subset.end()), params);
  return search_eps(s, params);
}

double adapt_eps(std::span<const int> subset, const PointSet& ps, const ParamSet& params) {
  return adapt_eps_traced(subset, ps, params).eps;
}

HierarchyResult sdc_hsdd_ndsa(const PointSet& ps, const ParamSet& params) {
  check_input(ps, params);
  const std::size_t n = ps.size();
  Pipeline pipe(ps, params);

  ParamSet knn = params;
  knn.mode = Mode::KNN;
  knn.kon = false;
  knn.merge_enabled = false;
  const Subset whole(ps, all_indices(n), params);
  const Assignment first = whole.cluster(knn);

  const int min_size = params.effective_min(n);
  std::vector<int> prefiltered;
  std::vector<std::vector<int>> small;
  std::deque<std::vector<int>> queue;
  for (std::size_t c = 1; c < first.clusters.size(); ++c) {
    const auto& members = first.clusters[c];
    const int size = static_cast<int>(members.size());
    if (size < params.min_knn_cluster_point) {
      prefiltered.insert(prefiltered.end(), members.begin(), members.end());
    } else if (size < min_size) {
      small.push_back(members);
    } else {
      queue.push_back(members);
    }
  }
  std::sort(prefiltered.begin(), prefiltered.end());
  pipe.add_isolated(std::move(prefiltered), IsolationStage::KnnPrefilter);

  ParamSet small_params = params;
  small_params.mode = Mode::KNN;
  small_params.kon = true;
  small_params.merge_enabled = true;
  for (auto& members : small) {
    const Subset s(ps, std::move(members), params);
    pipe.finalize(s, small_params, IsolationStage::KnnSmall);
  }

  refine(pipe, ps, params, std::move(queue), [&](const Subset& s) {
    return s.members.size() >= 2 ? search_eps(s, params).eps : params.max_eps;
  });
  return pipe.finish();
}

Assignment redistribute_isolated(const Assignment& a, const PointSet& ps, bool* skipped) {
  if (skipped) *skipped = false;
  if (a.isolated().empty()) return a;
  std::vector<int> targets;
  for (std::size_t c = 1; c < a.clusters.size(); ++c) {
    targets.insert(targets.end(), a.clusters[c].begin(), a.clusters[c].end());
  }
  if (targets.empty()) {
    if (skipped) *skipped = true;
    return a;
  }
  std::sort(targets.begin(), targets.end());
  const auto nearest = nearest_member(ps, a.isolated(), targets);
  std::vector<int> cp = a.cp;
  for (std::size_t q = 0; q < a.isolated().size(); ++q) {
    cp[static_cast<std::size_t>(a.isolated()[q])] = a.cp[static_cast<std::size_t>(nearest[q])];
  }
  return Assignment::from_codes(std::move(cp), a.effective_min);
}

}  // namespace sdc
