#include "sdc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdc/error.hpp"

namespace sdc {

namespace {

std::vector<int> distinct(std::span<const int> v) {
  std::vector<int> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t position(const std::vector<int>& sorted, int value) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) -
                                  sorted.begin());
}

double pairs(std::int64_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - 1); }

}  // namespace

ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) {
    throw ParameterError("label vectors differ in length: " + std::to_string(truth.size()) +
                         " vs " + std::to_string(pred.size()));
  }
  if (truth.empty()) throw ParameterError("label vectors are empty");
  ContingencyTable t;
  t.truth_labels = distinct(truth);
  t.pred_labels = distinct(pred);
  t.counts.assign(t.rows() * t.cols(), 0);
  t.row_sums.assign(t.rows(), 0);
  t.col_sums.assign(t.cols(), 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t r = position(t.truth_labels, truth[i]);
    const std::size_t c = position(t.pred_labels, pred[i]);
    ++t.counts[r * t.cols() + c];
    ++t.row_sums[r];
    ++t.col_sums[c];
  }
  t.n = static_cast<std::int64_t>(truth.size());
  return t;
}

double ari(std::span<const int> truth, std::span<const int> pred) {
  const ContingencyTable t = contingency(truth, pred);
  if (t.n < 2) return 1.0;
  double index = 0.0;
  for (std::int64_t c : t.counts) index += pairs(c);
  double a = 0.0;
  for (std::int64_t c : t.row_sums) a += pairs(c);
  double b = 0.0;
  for (std::int64_t c : t.col_sums) b += pairs(c);
  const double expected = a * b / pairs(t.n);
  const double max_index = 0.5 * (a + b);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both labellings trivial
  return (index - expected) / denom;
}

double nmi(std::span<const int> truth, std::span<const int> pred, NmiNorm norm) {
  const ContingencyTable t = contingency(truth, pred);
  const double n = static_cast<double>(t.n);
  auto entropy = [n](const std::vector<std::int64_t>& sums) {
    double h = 0.0;
    for (std::int64_t c : sums) {
      if (c > 0) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
      }
    }
    return h;
  };
  const double hu = entropy(t.row_sums);
  const double hv = entropy(t.col_sums);
  if (t.rows() == 1 && t.cols() == 1) return 1.0;

  double mi = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const auto nij = t.at(r, c);
      if (nij == 0) continue;
      const double v = static_cast<double>(nij);
      mi += v / n *
            std::log(v * n / (static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c])));
    }
  }
  const double denom = norm == NmiNorm::Arithmetic ? 0.5 * (hu + hv) : std::sqrt(hu * hv);
  if (denom <= 0.0) return 0.0;
  return std::clamp(mi / denom, 0.0, 1.0);
}

}  // namespace sdc
