#include "sdc/assignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sdc {

Assignment Assignment::from_codes(std::vector<int> cp, int effective_min) {
  Assignment a;
  int top = 0;
  for (int c : cp) top = std::max(top, c);
  a.clusters.assign(static_cast<std::size_t>(top) + 1, {});
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (cp[i] >= 0) a.clusters[static_cast<std::size_t>(cp[i])].push_back(static_cast<int>(i));
  }
  a.cp = std::move(cp);
  a.effective_min = effective_min;
  return a;
}

void Assignment::check_consistent() const {
  if (clusters.empty()) throw std::logic_error("assignment has no isolated slot");
  std::size_t members = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (c > 0 && clusters[c].empty()) {
      throw std::logic_error("cluster id " + std::to_string(c) + " is empty");
    }
    for (int i : clusters[c]) {
      if (i < 0 || static_cast<std::size_t>(i) >= cp.size() ||
          cp[static_cast<std::size_t>(i)] != static_cast<int>(c)) {
        throw std::logic_error("member list of cluster " + std::to_string(c) +
                               " disagrees with codes");
      }
    }
    members += clusters[c].size();
  }
  std::size_t classified = 0;
  for (int c : cp) {
    if (c >= static_cast<int>(clusters.size())) throw std::logic_error("code out of range");
    if (c >= 0) ++classified;
  }
  if (classified != members) throw std::logic_error("codes and member lists differ in size");
}

int count_effective(const Assignment& a, int threshold) {
  int count = 0;
  for (std::size_t c = 1; c < a.clusters.size(); ++c) {
    if (static_cast<int>(a.clusters[c].size()) >= threshold) ++count;
  }
  return count;
}

Assignment densify(const Assignment& a) {
  std::vector<int> remap(a.clusters.size(), kUnclassified);
  remap[0] = kIsolated;
  int next = 1;
  for (std::size_t c = 1; c < a.clusters.size(); ++c) {
    if (!a.clusters[c].empty()) remap[c] = next++;
  }
  std::vector<int> cp(a.cp.size());
  for (std::size_t i = 0; i < cp.size(); ++i) {
    cp[i] = a.cp[i] < 0 ? kUnclassified : remap[static_cast<std::size_t>(a.cp[i])];
  }
  return Assignment::from_codes(std::move(cp), a.effective_min);
}

}  // namespace sdc
