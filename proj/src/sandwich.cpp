#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "altseq/exact.hpp"
#include "altseq/parallel.hpp"
#include "altseq/stochastic.hpp"

namespace altseq {

double SandwichOutcome::violation_fraction() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(lower_violated + upper_violated) /
                           static_cast<double>(trials);
}

double SandwichOutcome::ks_exceeded_fraction() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(ks_exceeded) /
                           static_cast<double>(trials);
}

SandwichBounds sandwich_bounds(std::size_t n, Value k) {
  if (n < 2 || k < 1 || k > static_cast<Value>(n) - 1) {
    throw ParameterRangeError("k must lie in [1, n-1]");
  }
  const double nd = static_cast<double>(n);
  const double slack = std::cbrt(1.0 / nd);
  SandwichBounds b{static_cast<double>(k) / nd - slack,
                   static_cast<double>(k) / nd + slack};
  if (b.x1 < 0) {
    throw ParameterRangeError("lower bound x1 = k/n - n^(-1/3) = " +
                              format_double(b.x1) + " is negative");
  }
  if (b.x2 >= 1) {
    throw ParameterRangeError("upper bound x2 = k/n + n^(-1/3) = " +
                              format_double(b.x2) + " is not below 1");
  }
  return b;
}

SandwichOutcome sandwich_trials(std::size_t n, Value k, std::uint64_t trials,
                                const SeedSpec& seed, unsigned workers) {
  const auto bounds = sandwich_bounds(n, k);
  SandwichOutcome out;
  out.n = n;
  out.k = k;
  out.x1 = bounds.x1;
  out.x2 = bounds.x2;
  out.ks_threshold = 0.5 * std::cbrt(1.0 / static_cast<double>(n));
  out.trials = trials;

  const auto parts = map_chunks<SandwichOutcome>(
      trials, kSampleChunk, workers, [&](const ChunkRange& c) {
        Rng rng(seed, c.index);
        SandwichOutcome part;
        std::vector<std::size_t> order(n);
        std::vector<double> sorted(n);
        Permutation ranks(n);
        for (std::uint64_t t = c.begin; t < c.end; ++t) {
          const auto y = sample_real_seq(n, rng);
          std::iota(order.begin(), order.end(), std::size_t{0});
          std::sort(order.begin(), order.end(),
                    [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
          for (std::size_t r = 0; r < n; ++r) {
            ranks[order[r]] = static_cast<Value>(r + 1);
            sorted[r] = y[order[r]];
          }
          const double ks = ks_sup_sorted(sorted);
          const std::size_t upper = greedy_x_length(y, out.x1);
          const std::size_t middle = greedy_k_length(ranks, k);
          const std::size_t lower = greedy_x_length(y, out.x2);

          const bool low_bad = lower > middle;
          const bool high_bad = middle > upper;
          if (ks > out.ks_threshold) ++part.ks_exceeded;
          if (low_bad) ++part.lower_violated;
          if (high_bad) ++part.upper_violated;
          if (!low_bad && !high_bad) ++part.holds;

          if ((low_bad || high_bad) && ks <= out.ks_threshold) {
            std::ostringstream msg;
            msg << "sandwich broken with ks_sup " << ks << " <= "
                << out.ks_threshold << " (trial " << t << ", n " << n
                << ", k " << k << "): L_x2=" << lower << " L_k=" << middle
                << " L_x1=" << upper;
            throw InvariantViolation(msg.str());
          }
        }
        return part;
      });

  for (const auto& p : parts) {
    out.holds += p.holds;
    out.lower_violated += p.lower_violated;
    out.upper_violated += p.upper_violated;
    out.ks_exceeded += p.ks_exceeded;
  }
  return out;
}

}  // namespace altseq
