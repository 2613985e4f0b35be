#include "sdc/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sdc/error.hpp"

namespace sdc {

std::vector<double> compute_density(const NeighborTable& nt, std::size_t k, std::size_t dim,
                                    double r_floor) {
  if (k == 0 || k > nt.width()) {
    throw ParameterError("compute_density: k = " + std::to_string(k) +
                         " exceeds neighbour table width " + std::to_string(nt.width()));
  }
  const double d = static_cast<double>(dim);
  std::vector<double> out(nt.size());
  for (std::size_t i = 0; i < nt.size(); ++i) {
    const auto dist = nt.distances(i, k);
    const double r = std::accumulate(dist.begin(), dist.end(), 0.0) / static_cast<double>(k);
    out[i] = 1.0 / std::pow(std::max(r, r_floor), d);
  }
  return out;
}

std::vector<double> normalize_max(std::span<const double> raw) {
  const double top = *std::max_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / top;
  return out;
}

std::vector<double> normalize_mean(std::span<const double> raw) {
  const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / mean;
  return out;
}

Differentials compute_differentials(std::span<const double> normalized, const NeighborTable& nt,
                                    std::size_t search_k) {
  if (search_k > nt.width()) {
    throw ParameterError("compute_differentials: SearchNeighborK = " + std::to_string(search_k) +
                         " exceeds neighbour table width " + std::to_string(nt.width()));
  }
  std::vector<double> values(nt.size() * search_k);
  for (std::size_t a = 0; a < nt.size(); ++a) {
    const auto nb = nt.indices(a, search_k);
    for (std::size_t s = 0; s < search_k; ++s) {
      values[a * search_k + s] = normalized[static_cast<std::size_t>(nb[s])] - normalized[a];
    }
  }
  return Differentials(nt.size(), search_k, std::move(values));
}

std::vector<int> detect_isolated(std::span<const double> nisrho, double threshold) {
  std::vector<int> out;
  for (std::size_t i = 0; i < nisrho.size(); ++i) {
    if (nisrho[i] < threshold) out.push_back(static_cast<int>(i));
  }
  return out;
}

double distance_floor(const PointSet& ps) {
  const double diam = ps.diameter();
  return diam > 0.0 ? 1e-12 * diam : 1.0;
}

DensityProfile compute_profile(const PointSet& ps, const NeighborTable& nt, std::size_t rho_k,
                               std::size_t iso_k, std::size_t search_k,
                               DifferentialSource source) {
  const double floor = distance_floor(ps);
  DensityProfile p;
  p.raw = compute_density(nt, rho_k, ps.dim(), floor);
  p.nrho = normalize_max(p.raw);
  p.iso_raw = compute_density(nt, iso_k, ps.dim(), floor);
  p.nisrho = normalize_mean(p.iso_raw);
  p.drho = compute_differentials(source == DifferentialSource::MaxNormalized ? p.nrho : p.nisrho,
                                 nt, search_k);
  return p;
}

}  // namespace sdc
