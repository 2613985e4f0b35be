#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sdc {

/// Co-occurrence counts between a truth labelling (rows) and a predicted
/// labelling (columns). Label values are arbitrary integers; rows and
/// columns follow ascending label value.
struct ContingencyTable {
  std::vector<int> truth_labels;
  std::vector<int> pred_labels;
  std::vector<std::int64_t> counts;  // rows x cols, row-major
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t n = 0;

  std::size_t rows() const { return truth_labels.size(); }
  std::size_t cols() const { return pred_labels.size(); }
  std::int64_t at(std::size_t r, std::size_t c) const { return counts[r * cols() + c]; }
};

/// Throws ParameterError on length mismatch or empty input.
ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred);

/// Adjusted Rand index. With fewer than two points, or when both labellings
/// are a single block, the index is defined as 1.
double ari(std::span<const int> truth, std::span<const int> pred);

enum class NmiNorm { Arithmetic, Geometric };

/// Mutual information normalised by the mean of the two entropies.
/// Two constant labellings score 1; a zero denominator otherwise scores 0.
double nmi(std::span<const int> truth, std::span<const int> pred,
           NmiNorm norm = NmiNorm::Arithmetic);

}  // namespace sdc
