// Sufficient statistics and goodness-of-fit tests for integer-valued draws.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace altseq {

// Counts of observed lengths, indexed by length. Merging is exact integer
// addition, so aggregation order never changes the result.
struct LengthHistogram {
  std::vector<std::uint64_t> counts;

  void add(std::size_t length, std::uint64_t times = 1);
  void merge(const LengthHistogram& other);
  std::uint64_t total() const;
  double frequency(std::size_t length) const;

  bool operator==(const LengthHistogram&) const = default;
};

struct MomentEstimate {
  std::uint64_t samples = 0;
  double mean = 0;
  double mean_se = 0;
  double variance = 0;     // unbiased sample variance
  double variance_se = 0;  // jackknife standard error
};

// Requires at least three samples for the jackknife.
MomentEstimate estimate_from_histogram(const LengthHistogram& h);

// Probability mass function over lengths (index = length).
using LengthPmf = std::vector<double>;

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double critical = 0;  // upper alpha quantile of chi^2(dof)
  double p_value = 1;
  bool pass = true;
};

// Pearson goodness of fit against `pmf`. Adjacent cells are pooled until
// each has expected count >= 5. Any observation on a zero-probability
// length fails outright.
ChiSquareResult chi_square_gof(const LengthHistogram& observed,
                               const LengthPmf& pmf, double alpha);

// Two-sample homogeneity test; adjacent cells pooled until each has at
// least 10 combined observations.
ChiSquareResult chi_square_two_sample(const LengthHistogram& a,
                                      const LengthHistogram& b, double alpha);

double total_variation(const LengthHistogram& observed, const LengthPmf& pmf);
double total_variation(const LengthHistogram& a, const LengthHistogram& b);

// Limiting law of sqrt(n) * sup |F_n - F| (maximum of a Brownian bridge).
double kolmogorov_cdf(double t);
double kolmogorov_quantile(double p);

double normal_upper_quantile(double alpha);
double chi_square_upper_quantile(int dof, double alpha);

// sup_s |F_hat(s) - s| for the empirical distribution of `y`, evaluated
// exactly at the order statistics. Throws std::invalid_argument on empty
// input. Sorts a copy.
double ks_sup(std::span<const double> y);

// Same statistic when `sorted` is already in ascending order.
double ks_sup_sorted(std::span<const double> sorted);

struct KsTestResult {
  std::size_t n = 0;
  double statistic = 0;  // sup distance
  double scaled = 0;     // sqrt(n) * statistic
  double critical = 0;   // Kolmogorov upper alpha quantile
  bool pass = true;
};

// Asymptotic one-sample KS test of uniformity on [0,1].
KsTestResult ks_uniform_test(std::span<const double> values, double alpha);

}  // namespace altseq
