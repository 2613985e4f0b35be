#include "sdc/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sdc/error.hpp"

namespace sdc {

std::string to_string(Mode m) { return m == Mode::SD ? "SD" : "kNN"; }

Mode parse_mode(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "sd") return Mode::SD;
  if (lower == "knn") return Mode::KNN;
  throw ParameterError("unknown mode '" + s + "' (expected SD or kNN)");
}

void ParamSet::validate() const {
  if (search_neighbor_k < 1 || rho_calculate_k < 1 || iso_neighbor_k < 1) {
    throw ParameterError("neighbour counts must all be at least 1");
  }
  if (min_cluster_point < 1 || min_knn_cluster_point < 1) {
    throw ParameterError("minimum cluster sizes must be at least 1");
  }
  if (min_knn_cluster_point > min_cluster_point) {
    throw ParameterError("MinKNNClusterPoint (" + std::to_string(min_knn_cluster_point) +
                         ") must not exceed MinClusterPoint (" +
                         std::to_string(min_cluster_point) + ")");
  }
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(min_eps > 0.0)) throw ParameterError("Mineps must be positive");
  if (!(min_eps <= max_eps)) throw ParameterError("Mineps must not exceed Maxeps");
  if (!(adjust > 0.0)) throw ParameterError("adjust must be positive");
  if (!(max_iso_point_rho >= 0.0)) throw ParameterError("MaxIsoPointRho must be non-negative");
  if (fraction_f && !(*fraction_f > 0.0 && *fraction_f < 1.0)) {
    throw ParameterError("fraction f must lie in (0, 1)");
  }
}

int ParamSet::max_k() const {
  return std::max({search_neighbor_k, rho_calculate_k, iso_neighbor_k});
}

int ParamSet::effective_min(std::size_t n) const {
  if (!fraction_f) return min_cluster_point;
  const double by_fraction = std::ceil((1.0 - *fraction_f) * static_cast<double>(n));
  return std::max(min_cluster_point, static_cast<int>(by_fraction));
}

}  // namespace sdc
