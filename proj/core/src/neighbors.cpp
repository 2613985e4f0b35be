#include "sdc/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "sdc/error.hpp"
#include "sdc/parallel.hpp"

namespace sdc {

NeighborTable::NeighborTable(std::size_t n, std::size_t k, std::vector<int> idx,
                             std::vector<double> dist)
    : n_(n), k_(k), idx_(std::move(idx)), dist_(std::move(dist)) {
  if (idx_.size() != n_ * k_ || dist_.size() != n_ * k_) {
    throw ParameterError("NeighborTable: storage does not match n * k");
  }
}

namespace {

constexpr std::size_t kLeafSize = 12;

using Candidate = std::pair<double, int>;  // (squared distance, index), compared lexicographically

// Bounded max-heap holding the k lexicographically smallest candidates seen so far.
class BoundedHeap {
 public:
  explicit BoundedHeap(std::size_t k) : k_(k) { heap_.reserve(k + 1); }

  bool full() const { return heap_.size() == k_; }
  double worst() const { return heap_.front().first; }

  void offer(double d2, int idx) {
    const Candidate c{d2, idx};
    if (!full()) {
      heap_.push_back(c);
      std::push_heap(heap_.begin(), heap_.end());
    } else if (c < heap_.front()) {
      std::pop_heap(heap_.begin(), heap_.end());
      heap_.back() = c;
      std::push_heap(heap_.begin(), heap_.end());
    }
  }

  std::vector<Candidate> sorted() && {
    std::sort_heap(heap_.begin(), heap_.end());
    return std::move(heap_);
  }

 private:
  std::size_t k_;
  std::vector<Candidate> heap_;
};

}  // namespace

struct KdTree::Impl {
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;
  };

  const PointSet* ps = nullptr;
  std::size_t dim = 0;
  std::vector<int> order;
  std::vector<Node> nodes;
  std::vector<double> lo;  // per-node bounding box, dim values each
  std::vector<double> hi;

  int build(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({begin, end, -1, -1});
    lo.resize(lo.size() + dim);
    hi.resize(hi.size() + dim);
    double* nlo = lo.data() + static_cast<std::size_t>(id) * dim;
    double* nhi = hi.data() + static_cast<std::size_t>(id) * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      nlo[j] = std::numeric_limits<double>::infinity();
      nhi[j] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t p = begin; p < end; ++p) {
      auto row = ps->point(static_cast<std::size_t>(order[p]));
      for (std::size_t j = 0; j < dim; ++j) {
        nlo[j] = std::min(nlo[j], row[j]);
        nhi[j] = std::max(nhi[j], row[j]);
      }
    }
    if (end - begin <= kLeafSize) return id;

    std::size_t axis = 0;
    double spread = -1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (nhi[j] - nlo[j] > spread) {
        spread = nhi[j] - nlo[j];
        axis = j;
      }
    }
    if (spread <= 0.0) return id;  // all coincident

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(mid),
                     order.begin() + static_cast<std::ptrdiff_t>(end), [&](int a, int b) {
                       const double va = ps->at(static_cast<std::size_t>(a), axis);
                       const double vb = ps->at(static_cast<std::size_t>(b), axis);
                       return va < vb || (va == vb && a < b);
                     });
    const int l = build(begin, mid);
    const int r = build(mid, end);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  double box_distance(int node, std::span<const double> q) const {
    const double* nlo = lo.data() + static_cast<std::size_t>(node) * dim;
    const double* nhi = hi.data() + static_cast<std::size_t>(node) * dim;
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double diff = 0.0;
      if (q[j] < nlo[j]) {
        diff = nlo[j] - q[j];
      } else if (q[j] > nhi[j]) {
        diff = q[j] - nhi[j];
      }
      s += diff * diff;
    }
    return s;
  }

  void search(int node, std::span<const double> q, int exclude, BoundedHeap& heap) const {
    const Node& nd = nodes[static_cast<std::size_t>(node)];
    if (nd.left < 0) {
      for (std::size_t p = nd.begin; p < nd.end; ++p) {
        const int idx = order[p];
        if (idx == exclude) continue;
        heap.offer(squared_distance(q, ps->point(static_cast<std::size_t>(idx))), idx);
      }
      return;
    }
    const double dl = box_distance(nd.left, q);
    const double dr = box_distance(nd.right, q);
    const int first = dl <= dr ? nd.left : nd.right;
    const int second = dl <= dr ? nd.right : nd.left;
    const double d_first = std::min(dl, dr);
    const double d_second = std::max(dl, dr);
    // Equal distances must still be visited: a lower index may win the tie.
    if (!heap.full() || d_first <= heap.worst()) search(first, q, exclude, heap);
    if (!heap.full() || d_second <= heap.worst()) search(second, q, exclude, heap);
  }
};

KdTree::KdTree(const PointSet& ps) : KdTree(ps, [&] {
  std::vector<int> all(ps.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}()) {}

KdTree::KdTree(const PointSet& ps, std::vector<int> members) : impl_(std::make_unique<Impl>()) {
  impl_->ps = &ps;
  impl_->dim = ps.dim();
  impl_->order = std::move(members);
  if (!impl_->order.empty()) impl_->build(0, impl_->order.size());
}

KdTree::~KdTree() = default;
KdTree::KdTree(KdTree&&) noexcept = default;
KdTree& KdTree::operator=(KdTree&&) noexcept = default;

std::size_t KdTree::size() const { return impl_->order.size(); }

std::vector<std::pair<int, double>> KdTree::nearest(std::span<const double> query, std::size_t k,
                                                    int exclude) const {
  std::vector<std::pair<int, double>> out;
  if (k == 0 || impl_->order.empty()) return out;
  BoundedHeap heap(k);
  impl_->search(0, query, exclude, heap);
  auto found = std::move(heap).sorted();
  out.reserve(found.size());
  for (auto [d2, idx] : found) out.emplace_back(idx, d2);
  return out;
}

namespace {

bool prefer_brute_force(const PointSet& ps) {
  const double n = static_cast<double>(ps.size());
  return ps.size() <= 32 || static_cast<double>(ps.dim()) > std::log2(n);
}

void brute_force_rows(const PointSet& ps, std::size_t k, std::size_t begin, std::size_t end,
                      std::vector<int>& idx, std::vector<double>& dist) {
  std::vector<Candidate> cand;
  cand.reserve(ps.size());
  for (std::size_t i = begin; i < end; ++i) {
    cand.clear();
    auto qi = ps.point(i);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (j == i) continue;
      cand.emplace_back(squared_distance(qi, ps.point(j)), static_cast<int>(j));
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    for (std::size_t r = 0; r < k; ++r) {
      idx[i * k + r] = cand[r].second;
      dist[i * k + r] = std::sqrt(cand[r].first);
    }
  }
}

}  // namespace

NeighborTable build_neighbor_table(const PointSet& ps, std::size_t k, NeighborBackend backend,
                                   std::size_t threads) {
  const std::size_t n = ps.size();
  if (k < 1 || k + 1 > n) {
    throw ParameterError("build_neighbor_table: k = " + std::to_string(k) +
                         " must satisfy 1 <= k <= n - 1 with n = " + std::to_string(n));
  }
  std::vector<int> idx(n * k);
  std::vector<double> dist(n * k);

  if (backend == NeighborBackend::Auto) {
    backend = prefer_brute_force(ps) ? NeighborBackend::BruteForce : NeighborBackend::KdTree;
  }
  if (backend == NeighborBackend::BruteForce) {
    parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
      brute_force_rows(ps, k, b, e, idx, dist);
    });
  } else {
    const KdTree tree(ps);
    parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        auto found = tree.nearest(ps.point(i), k, static_cast<int>(i));
        for (std::size_t r = 0; r < k; ++r) {
          idx[i * k + r] = found[r].first;
          dist[i * k + r] = std::sqrt(found[r].second);
        }
      }
    });
  }
  return NeighborTable(n, k, std::move(idx), std::move(dist));
}

std::vector<int> nearest_member(const PointSet& ps, std::span<const int> queries,
                                std::span<const int> targets) {
  if (targets.empty()) throw ParameterError("nearest_member: no target points");
  const KdTree tree(ps, std::vector<int>(targets.begin(), targets.end()));
  std::vector<int> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    out[q] = tree.nearest(ps.point(static_cast<std::size_t>(queries[q])), 1)[0].first;
  }
  return out;
}

}  // namespace sdc
