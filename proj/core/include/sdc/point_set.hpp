#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace sdc {

/// N x d matrix of finite coordinates stored row-major, with optional
/// ground-truth labels. Immutable after construction.
class PointSet {
 public:
  PointSet() = default;

  /// Throws ParameterError if `coords.size()` is not a multiple of `dim`,
  /// the set is empty, a coordinate is non-finite, or the label count differs from n.
  PointSet(std::vector<double> coords, std::size_t dim,
           std::optional<std::vector<int>> labels = std::nullopt);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows,
                            std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return n_ == 0; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t j) const { return coords_[i * dim_ + j]; }

  const std::vector<double>& coords() const { return coords_; }
  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const { return *labels_; }
  const std::optional<std::vector<int>>& maybe_labels() const { return labels_; }

  /// Copy of the rows listed in `indices`, in that order, labels carried along.
  PointSet subset(std::span<const int> indices) const;

  /// Same coordinates with every value multiplied by `factor`.
  PointSet scaled(double factor) const;

  PointSet with_labels(std::optional<std::vector<int>> labels) const;

  /// Per-axis minimum and maximum.
  std::pair<std::vector<double>, std::vector<double>> bounds() const;

  /// Length of the bounding-box diagonal.
  double diameter() const;

 private:
  std::vector<double> coords_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::optional<std::vector<int>> labels_;
};

/// Maps every axis to [0, 1] by (v - min) / (max - min). A constant axis maps to 0.
PointSet minmax_rescale(const PointSet& ps);

/// Euclidean distance between rows i and j.
double distance(const PointSet& ps, std::size_t i, std::size_t j);

/// Squared Euclidean distance between two coordinate rows.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace sdc
