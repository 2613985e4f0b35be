#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdc/neighbors.hpp"
#include "sdc/point_set.hpp"

namespace sdc {

/// Sparse directed differential table aligned with a NeighborTable:
/// value(a, slot) = Nrho[b] - Nrho[a] where b is the slot-th neighbour of a.
class Differentials {
 public:
  Differentials() = default;
  Differentials(std::size_t n, std::size_t k, std::vector<double> values)
      : n_(n), k_(k), values_(std::move(values)) {}

  std::size_t size() const { return n_; }
  std::size_t width() const { return k_; }
  double value(std::size_t a, std::size_t slot) const { return values_[a * k_ + slot]; }
  std::span<const double> row(std::size_t a) const { return {values_.data() + a * k_, k_}; }
  const std::vector<double>& raw() const { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> values_;
};

/// Which normalised density feeds the differentials. MaxNormalized is the
/// default; MeanNormalized is kept as a switch for comparison runs.
enum class DifferentialSource { MaxNormalized, MeanNormalized };

struct DensityProfile {
  std::vector<double> raw;          // 1 / r^d over the density neighbours
  std::vector<double> nrho;         // raw / max(raw)
  std::vector<double> iso_raw;      // 1 / r^d over the isolation neighbours
  std::vector<double> nisrho;       // iso_raw / mean(iso_raw)
  Differentials drho;
};

/// Density 1 / max(r_i, r_floor)^d where r_i is the mean of the first k
/// neighbour distances of point i. Throws ParameterError if k exceeds the table width.
std::vector<double> compute_density(const NeighborTable& nt, std::size_t k, std::size_t dim,
                                    double r_floor = 0.0);

std::vector<double> normalize_max(std::span<const double> raw);
std::vector<double> normalize_mean(std::span<const double> raw);

/// Throws ParameterError if search_k exceeds the table width.
Differentials compute_differentials(std::span<const double> normalized, const NeighborTable& nt,
                                    std::size_t search_k);

/// Indices i with nisrho[i] < threshold, ascending.
std::vector<int> detect_isolated(std::span<const double> nisrho, double threshold);

/// Distance floor used for coincident points: 1e-12 times the set's diameter.
double distance_floor(const PointSet& ps);

DensityProfile compute_profile(const PointSet& ps, const NeighborTable& nt, std::size_t rho_k,
                               std::size_t iso_k, std::size_t search_k,
                               DifferentialSource source = DifferentialSource::MaxNormalized);

}  // namespace sdc
