#include "sdc/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdc/error.hpp"

namespace sdc {

PointSet::PointSet(std::vector<double> coords, std::size_t dim,
                   std::optional<std::vector<int>> labels)
    : coords_(std::move(coords)), dim_(dim), labels_(std::move(labels)) {
  if (dim_ == 0) throw ParameterError("PointSet: dimension must be at least 1");
  if (coords_.empty()) throw ParameterError("PointSet: at least one point is required");
  if (coords_.size() % dim_ != 0) {
    throw ParameterError("PointSet: coordinate count " + std::to_string(coords_.size()) +
                         " is not a multiple of dimension " + std::to_string(dim_));
  }
  n_ = coords_.size() / dim_;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw ParameterError("PointSet: non-finite coordinate at point " +
                           std::to_string(i / dim_) + ", axis " + std::to_string(i % dim_));
    }
  }
  if (labels_ && labels_->size() != n_) {
    throw ParameterError("PointSet: " + std::to_string(labels_->size()) + " labels for " +
                         std::to_string(n_) + " points");
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows,
                             std::optional<std::vector<int>> labels) {
  if (rows.empty()) throw ParameterError("PointSet: at least one point is required");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw ParameterError("PointSet: row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " values, expected " +
                           std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return PointSet(std::move(coords), dim, std::move(labels));
}

PointSet PointSet::subset(std::span<const int> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace().reserve(indices.size());
  for (int i : indices) {
    auto row = point(static_cast<std::size_t>(i));
    coords.insert(coords.end(), row.begin(), row.end());
    if (labels_) labels->push_back((*labels_)[static_cast<std::size_t>(i)]);
  }
  return PointSet(std::move(coords), dim_, std::move(labels));
}

PointSet PointSet::scaled(double factor) const {
  std::vector<double> coords = coords_;
  for (double& v : coords) v *= factor;
  return PointSet(std::move(coords), dim_, labels_);
}

PointSet PointSet::with_labels(std::optional<std::vector<int>> labels) const {
  return PointSet(coords_, dim_, std::move(labels));
}

std::pair<std::vector<double>, std::vector<double>> PointSet::bounds() const {
  std::vector<double> lo(point(0).begin(), point(0).end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < n_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double v = at(i, j);
      lo[j] = std::min(lo[j], v);
      hi[j] = std::max(hi[j], v);
    }
  }
  return {std::move(lo), std::move(hi)};
}

double PointSet::diameter() const {
  auto [lo, hi] = bounds();
  double s = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) s += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  return std::sqrt(s);
}

PointSet minmax_rescale(const PointSet& ps) {
  auto [lo, hi] = ps.bounds();
  std::vector<double> coords(ps.coords().size());
  const std::size_t d = ps.dim();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double range = hi[j] - lo[j];
      coords[i * d + j] = range > 0.0 ? (ps.at(i, j) - lo[j]) / range : 0.0;
    }
  }
  return PointSet(std::move(coords), d, ps.maybe_labels());
}

double distance(const PointSet& ps, std::size_t i, std::size_t j) {
  return std::sqrt(squared_distance(ps.point(i), ps.point(j)));
}

}  // namespace sdc
