#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sdc/error.hpp"
#include "sdc/metrics.hpp"

namespace sdc {
namespace {

using V = std::vector<int>;

TEST(Contingency, DiagonalForIdenticalLabels) {
  const auto t = contingency(V{0, 0, 1}, V{0, 0, 1});
  ASSERT_EQ(t.rows(), 2u);
  ASSERT_EQ(t.cols(), 2u);
  EXPECT_EQ(t.at(0, 0), 2);
  EXPECT_EQ(t.at(0, 1), 0);
  EXPECT_EQ(t.at(1, 0), 0);
  EXPECT_EQ(t.at(1, 1), 1);
}

TEST(Contingency, DirectCount) {
  const auto t = contingency(V{0, 0, 1, 1}, V{0, 0, 0, 1});
  EXPECT_EQ(t.at(0, 0), 2);
  EXPECT_EQ(t.at(0, 1), 0);
  EXPECT_EQ(t.at(1, 0), 1);
  EXPECT_EQ(t.at(1, 1), 1);
}

TEST(Contingency, SumsAndErrors) {
  std::mt19937_64 rng(1);
  const auto a = oracle::random_labels(200, 5, rng);
  const auto b = oracle::random_labels(200, 7, rng);
  const auto t = contingency(a, b);
  std::int64_t total = 0;
  for (auto c : t.counts) total += c;
  EXPECT_EQ(total, 200);
  EXPECT_EQ(t.n, 200);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < t.cols(); ++c) s += t.at(r, c);
    EXPECT_EQ(s, t.row_sums[r]);
  }
  EXPECT_THROW(contingency(V{0, 1}, V{0}), ParameterError);
  EXPECT_THROW(contingency(V{}, V{}), ParameterError);
}

TEST(Ari, Examples) {
  EXPECT_EQ(ari(V{0, 0, 1, 2}, V{5, 5, 3, 9}), 1.0);
  EXPECT_NEAR(ari(V{0, 0, 1, 1}, V{0, 0, 0, 1}), 0.0, 1e-15);
  EXPECT_NEAR(ari(V{0, 0, 1, 1}, V{4, 4, 4, 4}), 0.0, 1e-15);
  EXPECT_EQ(ari(V{3}, V{7}), 1.0);
}

TEST(Ari, MatchesPairCountingOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const auto a = oracle::random_labels(n, 1 + static_cast<int>(rng() % 6), rng);
    const auto b = oracle::random_labels(n, 1 + static_cast<int>(rng() % 6), rng);
    EXPECT_NEAR(ari(a, b), oracle::ari_pairs(a, b), 1e-12);
  }
}

TEST(Nmi, Examples) {
  EXPECT_NEAR(nmi(V{0, 0, 1, 2}, V{2, 2, 0, 1}), 1.0, 1e-15);
  EXPECT_EQ(nmi(V{0, 0, 1, 1}, V{3, 3, 3, 3}), 0.0);
  EXPECT_EQ(nmi(V{1, 1, 1}, V{2, 2, 2}), 1.0);
  const V t{0, 0, 1, 1}, p{0, 0, 0, 1};
  EXPECT_NEAR(nmi(t, p), oracle::nmi_entropy(t, p), 1e-15);
  const double mi = 0.5 * std::log(4.0 / 3) + 0.25 * std::log(2.0 / 3) + 0.25 * std::log(2.0);
  const double ht = std::log(2.0);
  const double hp = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  EXPECT_NEAR(nmi(t, p), mi / (0.5 * (ht + hp)), 1e-15);
}

TEST(Nmi, MatchesEntropyOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const auto a = oracle::random_labels(n, 1 + static_cast<int>(rng() % 5), rng);
    const auto b = oracle::random_labels(n, 1 + static_cast<int>(rng() % 5), rng);
    EXPECT_NEAR(nmi(a, b), oracle::nmi_entropy(a, b), 1e-12);
  }
}

TEST(Metrics, SymmetricAndPermutationInvariant) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_labels(150, 4, rng);
    const auto b = oracle::random_labels(150, 5, rng);
    EXPECT_NEAR(ari(a, b), ari(b, a), 1e-12);
    EXPECT_NEAR(nmi(a, b), nmi(b, a), 1e-12);
    std::vector<int> perm{7, -1, 30, 2, 11};
    std::shuffle(perm.begin(), perm.end(), rng);
    V pb;
    for (int l : b) pb.push_back(perm[static_cast<std::size_t>(l)]);
    EXPECT_NEAR(ari(a, pb), ari(a, b), 1e-12);
    EXPECT_NEAR(nmi(a, pb), nmi(a, b), 1e-12);
    EXPECT_NEAR(ari(a, a), 1.0, 1e-12);
    EXPECT_NEAR(nmi(a, a), 1.0, 1e-12);
  }
}

TEST(Nmi, GeometricNormalisation) {
  const V t{0, 0, 1, 1, 2, 2}, p{0, 0, 0, 1, 1, 1};
  EXPECT_GE(nmi(t, p, NmiNorm::Geometric), nmi(t, p, NmiNorm::Arithmetic));
}

}  // namespace
}  // namespace sdc
