// Seeded Monte Carlo for L_{n,k} and L_{n,x}: samplers, the thinning
// transform and its statistical validation, the KS-controlled sandwich
// between k- and x-alternation, and moment / variance-curve estimators.
//
// Every entry point taking a SeedSpec splits its work into fixed chunks of
// samples (see parallel.hpp); chunk c draws from Rng(seed, c). Results are
// bit-identical for any worker count.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "altseq/core.hpp"
#include "altseq/random.hpp"
#include "altseq/report.hpp"
#include "altseq/statistics.hpp"

namespace altseq {

// A parameter lies outside the range in which an operation is meaningful.
class ParameterRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline constexpr std::uint64_t kSampleChunk = 4096;

enum class PermutationRoute {
  kRank,     // psi of an i.i.d. uniform vector
  kShuffle,  // Fisher-Yates
};

enum class SamplingMethod {
  kDirect,    // greedy on a fresh permutation / real vector
  kThinning,  // ordinary alternation of the thinned vector z
  kBinomial,  // Z ~ Bin(n, 1 - x), then L_{Z,1} on a uniform permutation
};

const char* to_string(SamplingMethod m);
SamplingMethod parse_sampling_method(const std::string& s);

RealSeq sample_real_seq(std::size_t n, Rng& rng);
RealSeq sample_real_seq(std::size_t n, const SeedSpec& seed);

Permutation sample_permutation(std::size_t n, Rng& rng,
                               PermutationRoute route = PermutationRoute::kRank);
Permutation sample_permutation(std::size_t n, const SeedSpec& seed,
                               PermutationRoute route = PermutationRoute::kRank);

// One draw of L_{n,k} (uniform permutation via `route`) or L_{n,x}.
std::size_t sample_L_direct(std::size_t n, const Strength& strength, Rng& rng,
                            PermutationRoute route = PermutationRoute::kShuffle);

// Z ~ Bin(n, 1 - x), then the longest alternating subsequence of a uniform
// permutation of size Z. Z = 0 gives 0.
std::size_t sample_L_by_thinning_recipe(std::size_t n, double x, Rng& rng);

struct ThinningRecord {
  double x = 0;
  std::vector<std::size_t> accepted;  // A: indices ever provisionally accepted
  std::vector<double> z_values;       // one per accepted index, in [0, 1 - x]
};

enum class ThinningVariant {
  kFaithful,
  kOmitShift,  // mutation: keep y instead of y - x after up steps
};

// Runs the greedy with leading values above 1 - x rejected, and maps each
// provisionally accepted value to z = y - x if it was reached by going up
// and z = y otherwise.
ThinningRecord thinning_transform(std::span<const double> y, double x,
                                  ThinningVariant variant =
                                      ThinningVariant::kFaithful);

// Histogram of `samples` draws of L with the given method. k-mode supports
// kDirect only.
LengthHistogram sample_lengths(std::size_t n, const Strength& strength,
                               std::uint64_t samples, const SeedSpec& seed,
                               SamplingMethod method = SamplingMethod::kDirect,
                               unsigned workers = 1);

struct McSummary {
  std::string target;
  double estimate = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  SeedSpec seed;
};

struct MomentsResult {
  McSummary mean;
  McSummary variance;  // jackknife standard error
  LengthHistogram histogram;
};

// Requires samples >= 100.
MomentsResult estimate_moments(std::size_t n, const Strength& strength,
                               std::uint64_t samples, const SeedSpec& seed,
                               SamplingMethod method = SamplingMethod::kDirect,
                               unsigned workers = 1);

struct ThinningValidation {
  std::size_t n = 0;
  double x = 0;
  std::uint64_t runs = 0;
  double alpha = 0.001;
  double accepted_mean = 0;
  double accepted_variance = 0;
  double rejected_mean = 0;
  KsTestResult pooled_ks;
  double max_index_z = 0;       // largest |z-score| of per-index frequencies
  double index_z_critical = 0;  // Bonferroni two-sided quantile
  double correlation = 0;       // corr(|A|, mean z) over runs with |A| > 0
  std::uint64_t correlation_runs = 0;
  std::vector<Check> checks;

  bool passed() const;
};

// Requires runs >= 1000.
ThinningValidation validate_thinning(std::size_t n, double x,
                                     std::uint64_t runs, const SeedSpec& seed,
                                     unsigned workers = 1,
                                     ThinningVariant variant =
                                         ThinningVariant::kFaithful);

struct SandwichOutcome {
  std::size_t n = 0;
  Value k = 0;
  double x1 = 0;  // k/n - n^(-1/3)
  double x2 = 0;  // k/n + n^(-1/3)
  double ks_threshold = 0;  // n^(-1/3) / 2
  std::uint64_t trials = 0;
  std::uint64_t holds = 0;
  std::uint64_t lower_violated = 0;  // L_{n,x2}(y) > L_{n,k}(psi(y))
  std::uint64_t upper_violated = 0;  // L_{n,k}(psi(y)) > L_{n,x1}(y)
  std::uint64_t ks_exceeded = 0;     // ks_sup(y) > ks_threshold

  double violation_fraction() const;
  double ks_exceeded_fraction() const;
};

struct SandwichBounds {
  double x1 = 0;
  double x2 = 0;
};

// Throws ParameterRangeError naming the offending bound when x1 < 0 or
// x2 >= 1, or when k is outside [1, n-1].
SandwichBounds sandwich_bounds(std::size_t n, Value k);

// Each trial draws y, computes L_{n,x2}(y), L_{n,k}(psi(y)), L_{n,x1}(y)
// and ks_sup(y). A trial with ks_sup(y) <= ks_threshold that breaks the
// sandwich throws InvariantViolation.
SandwichOutcome sandwich_trials(std::size_t n, Value k, std::uint64_t trials,
                                const SeedSpec& seed, unsigned workers = 1);

struct KsConvergence {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double mean_scaled = 0;        // mean of sqrt(n) * ks_sup
  double max_cdf_gap = 0;        // sup_t |F_emp(t) - K(t)|, Stephens-scaled
  double tail_fraction = 0;      // P(ks_sup > n^(-1/3) / 2)
  double tail_limit = 0;         // 1 - K(n^(1/6) / 2)
};

// Empirical law of the KS statistic at size n against the Kolmogorov
// distribution. The statistic is scaled by sqrt(n) + 0.12 + 0.11/sqrt(n),
// which removes most of the finite-n bias.
KsConvergence ks_convergence(std::size_t n, std::uint64_t trials,
                             const SeedSpec& seed, unsigned workers = 1);

struct VariancePoint {
  double x = 0;
  double mean = 0;
  double variance = 0;
  double variance_se = 0;
};

struct VarianceCurve {
  std::size_t n = 0;
  std::vector<VariancePoint> points;
  std::array<double, 3> coefficients{};  // variance ~ c0 + c1 x + c2 x^2
  double fitted_argmax = 0;              // NaN unless c2 < 0
};

// Grid point i uses stream seed.stream_index + i. Requires
// samples_per_point >= 10^4 and every grid value in [0, 1).
VarianceCurve variance_curve(std::size_t n, std::span<const double> x_grid,
                             std::uint64_t samples_per_point,
                             const SeedSpec& seed, unsigned workers = 1);

// Weighted least-squares quadratic through the points (weights 1/se^2).
std::array<double, 3> fit_quadratic(std::span<const VariancePoint> points);

}  // namespace altseq
