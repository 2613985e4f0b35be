#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

namespace sdc::oracle {

namespace {

double dist(const PointSet& ps, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t c = 0; c < ps.dim(); ++c) {
    const double d = ps.at(i, c) - ps.at(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

BruteTable knn(const PointSet& ps, std::size_t k) {
  const std::size_t n = ps.size();
  BruteTable t;
  t.k = k;
  t.idx.resize(n);
  t.dist.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> all;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) all.emplace_back(dist(ps, i, j), static_cast<int>(j));
    }
    std::sort(all.begin(), all.end());
    for (std::size_t s = 0; s < k; ++s) {
      t.idx[i].push_back(all[s].second);
      t.dist[i].push_back(all[s].first);
    }
  }
  return t;
}

double floor_of(const PointSet& ps) {
  double s = 0.0;
  for (std::size_t c = 0; c < ps.dim(); ++c) {
    double lo = ps.at(0, c), hi = ps.at(0, c);
    for (std::size_t i = 1; i < ps.size(); ++i) {
      lo = std::min(lo, ps.at(i, c));
      hi = std::max(hi, ps.at(i, c));
    }
    s += (hi - lo) * (hi - lo);
  }
  return 1e-12 * std::sqrt(s);
}

std::vector<double> density(const BruteTable& t, std::size_t k, std::size_t dim, double floor) {
  std::vector<double> out;
  for (const auto& row : t.dist) {
    double r = 0.0;
    for (std::size_t s = 0; s < k; ++s) r += row[s];
    r /= static_cast<double>(k);
    out.push_back(1.0 / std::pow(std::max(r, floor), static_cast<double>(dim)));
  }
  return out;
}

Profile profile(const PointSet& ps, const ParamSet& p) {
  const std::size_t cap = ps.size() - 1;
  const std::size_t sk = std::min<std::size_t>(p.search_neighbor_k, cap);
  const std::size_t rk = std::min<std::size_t>(p.rho_calculate_k, cap);
  const std::size_t ik = std::min<std::size_t>(p.iso_neighbor_k, cap);
  Profile pr;
  pr.table = knn(ps, std::max({sk, rk, ik}));
  const double fl = floor_of(ps);
  pr.raw = density(pr.table, rk, ps.dim(), fl);
  pr.iso_raw = density(pr.table, ik, ps.dim(), fl);
  const double mx = *std::max_element(pr.raw.begin(), pr.raw.end());
  const double mean =
      std::accumulate(pr.iso_raw.begin(), pr.iso_raw.end(), 0.0) / static_cast<double>(ps.size());
  for (double v : pr.raw) pr.nrho.push_back(v / mx);
  for (double v : pr.iso_raw) pr.nisrho.push_back(v / mean);
  const auto& src = p.differential_source == DifferentialSource::MaxNormalized ? pr.nrho : pr.nisrho;
  pr.drho.resize(ps.size());
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t s = 0; s < sk; ++s) {
      pr.drho[a].push_back(src[static_cast<std::size_t>(pr.table.idx[a][s])] - src[a]);
    }
    if (pr.nisrho[a] < p.max_iso_point_rho) pr.isolated.push_back(static_cast<int>(a));
  }
  return pr;
}

std::vector<int> core_cluster(const PointSet& ps, const ParamSet& p) {
  const std::size_t n = ps.size();
  if (n == 1) return {1};
  const Profile pr = profile(ps, p);
  const std::size_t sk = pr.drho[0].size();
  const double eps = p.mode == Mode::KNN ? 4.0 : p.eps;

  std::vector<int> cp(n, -1);
  if (p.kon) {
    for (int i : pr.isolated) cp[static_cast<std::size_t>(i)] = 0;
  }
  // Position of b in a's neighbour row, for drho[a][b].
  auto slot_of = [&](std::size_t a, int b) {
    const auto& row = pr.table.idx[a];
    return static_cast<std::size_t>(std::find(row.begin(), row.begin() + static_cast<long>(sk), b) -
                                    row.begin());
  };

  int cluster = 0;
  while (true) {
    int seed = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (cp[i] != -1) continue;
      if (seed < 0 || pr.nrho[i] > pr.nrho[static_cast<std::size_t>(seed)]) seed = static_cast<int>(i);
    }
    if (seed < 0) break;
    ++cluster;
    cp[static_cast<std::size_t>(seed)] = cluster;
    std::deque<int> tem{seed};
    while (!tem.empty()) {
      const auto a = static_cast<std::size_t>(tem.front());
      tem.pop_front();
      for (std::size_t s = 0; s < sk; ++s) {
        const int b = pr.table.idx[a][s];
        const auto bu = static_cast<std::size_t>(b);
        if (cp[bu] != -1) continue;
        bool ok = false;
        for (std::size_t t = 0; t < sk && !ok; ++t) {
          const int e = pr.table.idx[bu][t];
          if (cp[static_cast<std::size_t>(e)] == 0) continue;
          ok = std::abs(pr.drho[a][slot_of(a, b)] - pr.drho[bu][t]) < eps;
        }
        if (ok) {
          cp[bu] = cluster;
          tem.push_back(b);
        }
      }
    }
  }
  if (!p.merge_enabled) return cp;

  const int threshold = p.effective_min(n);
  std::map<int, int> sizes;
  for (int c : cp) {
    if (c > 0) ++sizes[c];
  }
  std::vector<int> large;
  for (std::size_t i = 0; i < n; ++i) {
    if (cp[i] > 0 && sizes[cp[i]] >= threshold) large.push_back(static_cast<int>(i));
  }
  std::vector<int> out = cp;
  for (std::size_t i = 0; i < n; ++i) {
    if (cp[i] <= 0 || sizes[cp[i]] >= threshold) continue;
    if (large.empty()) {
      out[i] = 1;
      continue;
    }
    int best = large.front();
    for (int j : large) {
      if (dist(ps, i, static_cast<std::size_t>(j)) < dist(ps, i, static_cast<std::size_t>(best))) best = j;
    }
    out[i] = cp[static_cast<std::size_t>(best)];
  }
  return out;
}

double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  double both = 0, in_a = 0, in_b = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      both += (sa && sb) ? 1 : 0;
      in_a += sa ? 1 : 0;
      in_b += sb ? 1 : 0;
      pairs += 1;
    }
  }
  if (pairs == 0) return 1.0;
  const double expected = in_a * in_b / pairs;
  const double max_index = 0.5 * (in_a + in_b);
  if (max_index == expected) return 1.0;
  return (both - expected) / (max_index - expected);
}

double nmi_entropy(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> pab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1 / n;
    pb[b[i]] += 1 / n;
    pab[{a[i], b[i]}] += 1 / n;
  }
  auto entropy = [](const std::map<int, double>& m) {
    double h = 0;
    for (const auto& [k, v] : m) h -= v * std::log(v);
    return h;
  };
  double mi = 0;
  for (const auto& [k, v] : pab) mi += v * std::log(v / (pa[k.first] * pb[k.second]));
  const double ha = entropy(pa), hb = entropy(pb);
  if (ha == 0 && hb == 0) return 1.0;
  const double den = 0.5 * (ha + hb);
  return den == 0 ? 0.0 : mi / den;
}

std::vector<int> canonical(const std::vector<int>& labels) {
  std::map<int, int> seen;
  std::vector<int> out;
  for (int l : labels) {
    auto it = seen.try_emplace(l, static_cast<int>(seen.size())).first;
    out.push_back(it->second);
  }
  return out;
}

PointSet uniform(std::size_t n, std::size_t dim, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<double> c(n * dim);
  for (double& v : c) v = u(rng);
  return PointSet(std::move(c), dim);
}

PointSet mixed(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> blobs_d(1, 4);
  std::uniform_real_distribution<double> centre(-10.0, 10.0);
  std::uniform_real_distribution<double> spread(0.2, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int blobs = blobs_d(rng);
  std::vector<std::vector<double>> centres(static_cast<std::size_t>(blobs));
  std::vector<double> sds;
  for (auto& c : centres) {
    for (std::size_t j = 0; j < dim; ++j) c.push_back(centre(rng));
    sds.push_back(spread(rng));
  }
  std::vector<double> coords;
  std::uniform_int_distribution<int> pick(0, blobs - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = unit(rng);
    if (i > 0 && r < 0.03) {
      // duplicate of an earlier point
      std::uniform_int_distribution<std::size_t> prev(0, i - 1);
      const std::size_t src = prev(rng);
      for (std::size_t j = 0; j < dim; ++j) coords.push_back(coords[src * dim + j]);
    } else if (r < 0.06) {
      for (std::size_t j = 0; j < dim; ++j) coords.push_back(centre(rng) * 2.0);
    } else {
      const auto b = static_cast<std::size_t>(pick(rng));
      std::normal_distribution<double> g(0.0, sds[b]);
      for (std::size_t j = 0; j < dim; ++j) coords.push_back(centres[b][j] + g(rng));
    }
  }
  return PointSet(std::move(coords), dim);
}

std::vector<int> random_labels(std::size_t n, int classes, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, classes - 1);
  std::vector<int> out(n);
  for (int& v : out) v = d(rng);
  return out;
}

}  // namespace sdc::oracle
