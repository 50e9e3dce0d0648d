#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "altseq/core.hpp"

namespace altseq {
namespace {

using Idx = std::vector<std::size_t>;

TEST(Psi, Examples) {
  EXPECT_EQ(psi(RealSeq{0.3, 0.1, 0.9}), (Permutation{2, 1, 3}));
  EXPECT_EQ(psi(RealSeq{0.1, 0.2, 0.5, 0.7}), (Permutation{1, 2, 3, 4}));
  EXPECT_EQ(psi(RealSeq{0.9, 0.5, 0.1}), (Permutation{3, 2, 1}));
  EXPECT_TRUE(psi(RealSeq{}).empty());
}

TEST(Psi, TiesBrokenByIndex) {
  EXPECT_EQ(psi(RealSeq{0.5, 0.5, 0.1}), (Permutation{2, 3, 1}));
}

TEST(Predicates, KAlternatingExamples) {
  EXPECT_TRUE(is_k_alternating(IntWord{1, 4, 2}, 2));
  EXPECT_FALSE(is_k_alternating(IntWord{1, 3, 2}, 2));
  EXPECT_TRUE(is_k_alternating(IntWord{5}, 7));
  EXPECT_TRUE(is_k_alternating(IntWord{}, 1));
  EXPECT_TRUE(is_k_alternating(IntWord{3, 1}, 2, Direction::kDown));
  EXPECT_FALSE(is_k_alternating(IntWord{3, 1}, 2));
}

TEST(Predicates, XAlternatingExamples) {
  EXPECT_TRUE(is_x_alternating(RealSeq{0.1, 0.9, 0.2}, 0.5));
  EXPECT_FALSE(is_x_alternating(RealSeq{0.1, 0.5, 0.2}, 0.5));
  EXPECT_TRUE(is_x_alternating(RealSeq{0.42}, 0.99));
}

TEST(PeakValley, Examples) {
  const auto a = peak_valley_witness(Permutation{1, 3, 2, 4});
  EXPECT_EQ(a.length(), 4u);
  EXPECT_EQ(a.indices, (Idx{0, 1, 2, 3}));
  EXPECT_EQ(peak_valley_witness(Permutation{3, 2, 1}).length(), 1u);
  const Permutation w{2, 1, 4, 3};
  const auto c = peak_valley_witness(w);
  EXPECT_EQ(c.length(), 3u);
  EXPECT_EQ(witness_values(w, c), (IntWord{1, 4, 3}));
  EXPECT_EQ(subset_oracle(w, 1), 3u);
}

TEST(GreedyK, Examples) {
  const IntWord w{3, 1, 4, 5, 2};
  const auto a = greedy_k_alternating(w, 2);
  EXPECT_EQ(a.length(), 3u);
  EXPECT_EQ(witness_values(w, a), (IntWord{1, 5, 2}));
  EXPECT_EQ(a.indices, (Idx{1, 3, 4}));
  EXPECT_EQ(dp_longest_k_alternating(w, 2), 3u);
  EXPECT_EQ(subset_oracle(w, 2), 3u);
  for (Value k = 1; k <= 5; ++k) {
    EXPECT_EQ(greedy_k_alternating(IntWord{5, 4, 3, 2, 1}, k).length(), 1u);
  }
  EXPECT_EQ(greedy_k_alternating(IntWord{1, 2}, 1).length(), 2u);
  EXPECT_EQ(greedy_k_alternating(IntWord{}, 1).length(), 0u);
}

TEST(GreedyX, Examples) {
  const RealSeq y{0.8, 0.1, 0.9, 0.3};
  const auto a = greedy_x_alternating(y, 0.5);
  EXPECT_EQ(a.length(), 3u);
  EXPECT_EQ(witness_values(y, a), (RealSeq{0.1, 0.9, 0.3}));
  EXPECT_EQ(subset_oracle(y, 0.5), 3u);

  const auto single = greedy_x_alternating(RealSeq{0.9}, 0.5, true);
  EXPECT_EQ(single.indices, (Idx{0}));
}

TEST(GreedyX, ZeroThresholdMatchesPeakValleyOfRanks) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 500; ++t) {
    RealSeq y(1 + t % 15);
    for (auto& v : y) v = u(gen);
    EXPECT_EQ(greedy_x_alternating(y, 0.0).length(),
              peak_valley_witness(psi(y)).length());
  }
}

TEST(Dp, Examples) {
  EXPECT_EQ(dp_longest_k_alternating(IntWord{3, 1, 4, 5, 2}, 2), 3u);
  EXPECT_EQ(dp_longest_k_alternating(IntWord{1, 2, 3}, 2), 2u);
  EXPECT_EQ(dp_longest_k_alternating(IntWord{3, 1, 2}, 2, Direction::kDown),
            2u);
}

TEST(SubsetOracle, Examples) {
  EXPECT_EQ(subset_oracle(IntWord{1, 4, 2}, 2), 3u);
  EXPECT_EQ(subset_oracle(IntWord{2, 1}, 1), 1u);
  EXPECT_EQ(subset_oracle(IntWord{1, 3, 2, 4}, 1), 4u);
}

TEST(SubsetOracle, RejectsOversizedInput) {
  IntWord w(kSubsetOracleCap + 1);
  std::iota(w.begin(), w.end(), Value{1});
  EXPECT_THROW(subset_oracle(w, 1), OracleCapacityError);
  RealSeq y(kSubsetOracleCap + 1, 0.5);
  EXPECT_THROW(subset_oracle(y, 0.1), OracleCapacityError);
}

// Every permutation of size <= 6 and every k: greedy, DP and subset
// enumeration agree, and the greedy witness is valid.
TEST(Triangle, ExhaustiveSmallPermutations) {
  for (int n = 0; n <= 6; ++n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), Value{1});
    do {
      for (Value k = 1; k <= std::max(1, n - 1); ++k) {
        const auto g = greedy_k_alternating(p, k);
        ASSERT_EQ(g.length(), greedy_k_length(p, k));
        ASSERT_EQ(g.length(), dp_longest_k_alternating(p, k));
        ASSERT_EQ(g.length(), subset_oracle(p, k));
        ASSERT_TRUE(is_k_alternating(witness_values(p, g), k));
        ASSERT_TRUE(std::is_sorted(g.indices.begin(), g.indices.end()));
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(Triangle, RandomWordsUpTo14) {
  std::mt19937_64 gen(2024);
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(gen() % 14);
    IntWord w(n);
    std::iota(w.begin(), w.end(), Value{1});
    std::shuffle(w.begin(), w.end(), gen);
    if (t % 2 == 1) {
      // Sparse distinct values.
      for (auto& v : w) v = v * 7 - static_cast<Value>(gen() % 5);
    }
    const Value k = 1 + static_cast<Value>(gen() % (t % 2 ? 20 : n));
    const auto g = greedy_k_alternating(w, k);
    ASSERT_EQ(g.length(), dp_longest_k_alternating(w, k));
    ASSERT_EQ(g.length(), subset_oracle(w, k));
    ASSERT_TRUE(is_k_alternating(witness_values(w, g), k));
  }
}

TEST(Triangle, RandomRealSequences) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 2000; ++t) {
    RealSeq y(1 + gen() % 14);
    for (auto& v : y) v = u(gen);
    const double x = u(gen) * 0.8;
    const auto g = greedy_x_alternating(y, x);
    ASSERT_EQ(g.length(), greedy_x_length(y, x));
    ASSERT_EQ(g.length(), dp_longest_x_alternating(y, x));
    ASSERT_EQ(g.length(), subset_oracle(y, x));
    ASSERT_TRUE(is_x_alternating(witness_values(y, g), x));
    ASSERT_EQ(g, greedy_x_alternating(y, x, true));
  }
}

TEST(Properties, PsiIsEquivariantAndTransportsLength) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 300; ++t) {
    RealSeq y(1 + gen() % 30);
    for (auto& v : y) v = u(gen);
    const auto p = psi(y);
    ASSERT_TRUE(is_permutation_of_1_to_n(p));
    // An increasing transform of the values leaves the ranks unchanged.
    RealSeq z(y.size());
    std::transform(y.begin(), y.end(), z.begin(),
                   [](double v) { return v * v * 0.5 + 0.1; });
    ASSERT_EQ(psi(z), p);
    ASSERT_EQ(greedy_x_length(y, 0.0), greedy_k_length(p, 1));
  }
}

TEST(Properties, LengthIsMonotoneInStrength) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 40;
    Permutation p(n);
    std::iota(p.begin(), p.end(), Value{1});
    std::shuffle(p.begin(), p.end(), gen);
    for (Value k = 1; k + 1 < static_cast<Value>(n); ++k) {
      ASSERT_GE(greedy_k_length(p, k), greedy_k_length(p, k + 1));
    }
    RealSeq y(n);
    for (auto& v : y) v = u(gen);
    for (double x = 0; x < 0.95; x += 0.05) {
      ASSERT_GE(greedy_x_length(y, x), greedy_x_length(y, x + 0.05));
    }
  }
}

TEST(Properties, DownFirstIsUpFirstOfNegation) {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 300; ++t) {
    IntWord w(1 + gen() % 12);
    std::iota(w.begin(), w.end(), Value{1});
    std::shuffle(w.begin(), w.end(), gen);
    IntWord neg(w.size());
    std::transform(w.begin(), w.end(), neg.begin(), [](Value v) { return -v; });
    const Value k = 1 + static_cast<Value>(gen() % 4);
    ASSERT_EQ(dp_longest_k_alternating(w, k, Direction::kDown),
              dp_longest_k_alternating(neg, k));
    ASSERT_EQ(dp_longest_k_alternating(w, k, Direction::kDown),
              subset_oracle(w, k, Direction::kDown));
  }
}

TEST(Trace, RejectHighStartBookkeeping) {
  const auto t = greedy_x_trace(RealSeq{0.95, 0.2}, 0.5, true);
  ASSERT_EQ(t.steps.size(), 2u);
  EXPECT_EQ(t.steps[0], Acceptance::kRejected);
  EXPECT_EQ(t.steps[1], Acceptance::kInitial);
  EXPECT_EQ(t.provisional, (Idx{1}));
  EXPECT_EQ(t.witness.indices, (Idx{1}));

  const auto all_high = greedy_x_trace(RealSeq{0.9, 0.8, 0.95}, 0.5, true);
  EXPECT_TRUE(all_high.provisional.empty());
  EXPECT_EQ(all_high.witness.indices, (Idx{1}));
}

TEST(Validation, WordHelpers) {
  EXPECT_TRUE(is_permutation_of_1_to_n(Permutation{2, 3, 1}));
  EXPECT_FALSE(is_permutation_of_1_to_n(Permutation{2, 4, 1}));
  EXPECT_TRUE(has_distinct_values(IntWord{9, -3, 4}));
  EXPECT_FALSE(has_distinct_values(IntWord{1, 1, 2}));
}

}  // namespace
}  // namespace altseq
