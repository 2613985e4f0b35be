#pragma once

#include <cstddef>
#include <vector>

namespace sdc {

inline constexpr int kUnclassified = -1;
inline constexpr int kIsolated = 0;

/// Per-point cluster codes plus the matching member lists.
/// Code -1 is unclassified, 0 isolated, and ids >= 1 are clusters.
/// clusters[0] always holds the isolated points (possibly empty).
struct Assignment {
  std::vector<int> cp;
  std::vector<std::vector<int>> clusters;
  int effective_min = 0;

  /// Builds the member lists from codes. Cluster ids must already be dense.
  static Assignment from_codes(std::vector<int> cp, int effective_min);

  std::size_t size() const { return cp.size(); }
  /// Number of non-isolated clusters.
  std::size_t cluster_count() const { return clusters.empty() ? 0 : clusters.size() - 1; }
  const std::vector<int>& isolated() const { return clusters.front(); }

  /// Throws std::logic_error if codes and member lists disagree or ids are not dense.
  void check_consistent() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Number of non-isolated clusters with at least `threshold` members.
int count_effective(const Assignment& a, int threshold);

/// Renumbers clusters 1..m keeping their relative order;
/// empty clusters are dropped. Isolated points keep code 0.
Assignment densify(const Assignment& a);

}  // namespace sdc
