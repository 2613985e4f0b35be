#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "sdc/point_set.hpp"

namespace sdc {

/// Per-point ordered k-nearest neighbours. Row i is sorted by ascending
/// distance, ties by ascending index, and never contains i itself.
class NeighborTable {
 public:
  NeighborTable() = default;
  NeighborTable(std::size_t n, std::size_t k, std::vector<int> idx, std::vector<double> dist);

  std::size_t size() const { return n_; }
  std::size_t width() const { return k_; }

  /// First `count` neighbours of point i (count defaults to the full width).
  std::span<const int> indices(std::size_t i, std::size_t count) const {
    return {idx_.data() + i * k_, count};
  }
  std::span<const int> indices(std::size_t i) const { return indices(i, k_); }
  std::span<const double> distances(std::size_t i, std::size_t count) const {
    return {dist_.data() + i * k_, count};
  }
  std::span<const double> distances(std::size_t i) const { return distances(i, k_); }

  const std::vector<int>& raw_indices() const { return idx_; }
  const std::vector<double>& raw_distances() const { return dist_; }

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<int> idx_;
  std::vector<double> dist_;
};

/// Exact KD-tree over the rows of a PointSet (or a subset of them).
/// Queries return neighbours ordered by (distance, index).
class KdTree {
 public:
  explicit KdTree(const PointSet& ps);
  KdTree(const PointSet& ps, std::vector<int> members);
  ~KdTree();
  KdTree(KdTree&&) noexcept;
  KdTree& operator=(KdTree&&) noexcept;

  /// The k nearest members to `query`, skipping the member equal to `exclude`.
  /// Returns (index, squared distance) pairs.
  std::vector<std::pair<int, double>> nearest(std::span<const double> query, std::size_t k,
                                              int exclude = -1) const;

  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class NeighborBackend { Auto, KdTree, BruteForce };

/// Builds the exact k-NN table. Throws ParameterError unless 1 <= k <= n - 1.
/// `threads` = 0 uses default_thread_count(); the table is identical for any value.
NeighborTable build_neighbor_table(const PointSet& ps, std::size_t k,
                                   NeighborBackend backend = NeighborBackend::Auto,
                                   std::size_t threads = 0);

/// For each query row, the member of `targets` nearest to it (ties by lowest index).
/// `targets` must be nonempty.
std::vector<int> nearest_member(const PointSet& ps, std::span<const int> queries,
                                std::span<const int> targets);

}  // namespace sdc
