// Verification suites. Each returns a Report whose checks carry the
// observed value, the expected value or band, and a verdict.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "altseq/exact.hpp"
#include "altseq/random.hpp"
#include "altseq/report.hpp"

namespace altseq {

// Enumeration mean and variance against (4n+1)/6 and 8n/45 - 13/180.
Report verify_stanley(int n_min, int n_max, const EnumerationOptions& opts);

// Enumeration mean against (4(n-k)+5)/6 for every k in [1, n-1]. Each
// mismatch becomes a failing check named "counterexample n=.. k=..".
Report verify_armstrong(int n_min, int n_max, const EnumerationOptions& opts);

struct OracleSuiteParams {
  std::uint64_t cases = 1000;
  int random_n_max = 12;
  int exhaustive_n_max = 6;
  int recursion_n_max = 8;
};

// greedy = DP = subset oracle (exhaustive and random), witness validity,
// and the three-case recursion behind the greedy's optimality.
Report verify_oracles(const OracleSuiteParams& p, const SeedSpec& seed);

// Law of L_{n,x} from direct sampling against the exact binomial mixture.
Report verify_select(int n, std::span<const double> xs, std::uint64_t samples,
                     const SeedSpec& seed, unsigned workers,
                     const EnumerationOptions& opts);

// Binomial acceptance pattern and uniform z values, plus the mutation run.
Report verify_thinning(std::size_t n, double x, std::uint64_t runs,
                       const SeedSpec& seed, unsigned workers);

Report verify_sandwich(std::size_t n, Value k, std::uint64_t trials,
                       double max_violation, const SeedSpec& seed,
                       unsigned workers);

Report verify_ks(std::size_t n, std::uint64_t trials, const SeedSpec& seed,
                 unsigned workers);

Report verify_variance_max(std::size_t n, std::span<const double> grid,
                           std::uint64_t samples, const SeedSpec& seed,
                           unsigned workers);

}  // namespace altseq
