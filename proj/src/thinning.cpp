#include <algorithm>
#include <cmath>

#include "altseq/parallel.hpp"
#include "altseq/stochastic.hpp"

namespace altseq {

ThinningRecord thinning_transform(std::span<const double> y, double x,
                                  ThinningVariant variant) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("x must lie in [0, 1)");
  }
  const auto trace = greedy_x_trace(y, x, /*reject_high_start=*/true);
  ThinningRecord rec;
  rec.x = x;
  rec.accepted = trace.provisional;
  rec.z_values.reserve(rec.accepted.size());
  const bool shift = variant == ThinningVariant::kFaithful;
  for (std::size_t j : rec.accepted) {
    const bool went_up = trace.steps[j] == Acceptance::kAfterUp;
    rec.z_values.push_back(went_up && shift ? y[j] - x : y[j]);
  }
  return rec;
}

bool ThinningValidation::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

namespace {

struct ThinningPartial {
  std::vector<double> pooled;              // z / (1 - x)
  std::vector<std::uint64_t> index_hits;   // per position
  long double size_sum = 0;
  long double size_sq = 0;
  std::uint64_t corr_runs = 0;
  long double cs = 0, cm = 0, css = 0, cmm = 0, csm = 0;
};

}  // namespace

ThinningValidation validate_thinning(std::size_t n, double x,
                                     std::uint64_t runs, const SeedSpec& seed,
                                     unsigned workers,
                                     ThinningVariant variant) {
  if (runs < 1000) throw std::invalid_argument("validate_thinning needs >= 1000 runs");
  if (n == 0) throw std::invalid_argument("validate_thinning needs n >= 1");

  const double keep = 1.0 - x;
  const auto parts = map_chunks<ThinningPartial>(
      runs, kSampleChunk, workers, [&](const ChunkRange& c) {
        Rng rng(seed, c.index);
        ThinningPartial p;
        p.index_hits.assign(n, 0);
        for (std::uint64_t r = c.begin; r < c.end; ++r) {
          const auto y = sample_real_seq(n, rng);
          const auto rec = thinning_transform(y, x, variant);
          const auto size = static_cast<long double>(rec.accepted.size());
          p.size_sum += size;
          p.size_sq += size * size;
          for (std::size_t j : rec.accepted) ++p.index_hits[j];
          long double zsum = 0;
          for (double z : rec.z_values) {
            p.pooled.push_back(z / keep);
            zsum += z;
          }
          if (!rec.accepted.empty()) {
            const long double mz = zsum / size;
            ++p.corr_runs;
            p.cs += size;
            p.cm += mz;
            p.css += size * size;
            p.cmm += mz * mz;
            p.csm += size * mz;
          }
        }
        return p;
      });

  ThinningPartial all;
  all.index_hits.assign(n, 0);
  for (const auto& p : parts) {
    all.pooled.insert(all.pooled.end(), p.pooled.begin(), p.pooled.end());
    for (std::size_t j = 0; j < n; ++j) all.index_hits[j] += p.index_hits[j];
    all.size_sum += p.size_sum;
    all.size_sq += p.size_sq;
    all.corr_runs += p.corr_runs;
    all.cs += p.cs;
    all.cm += p.cm;
    all.css += p.css;
    all.cmm += p.cmm;
    all.csm += p.csm;
  }

  ThinningValidation v;
  v.n = n;
  v.x = x;
  v.runs = runs;
  const long double r = static_cast<long double>(runs);
  const long double mean = all.size_sum / r;
  v.accepted_mean = static_cast<double>(mean);
  v.accepted_variance =
      static_cast<double>((all.size_sq - r * mean * mean) / (r - 1));
  v.rejected_mean = static_cast<double>(n) - v.accepted_mean;

  const double nd = static_cast<double>(n);
  const double binom_mean = nd * keep;
  const double binom_var = nd * x * keep;

  // |A| ~ Bin(n, 1 - x): mean and variance.
  const double mean_se = std::sqrt(binom_var / static_cast<double>(runs));
  if (binom_var == 0) {
    v.checks.push_back({"accepted_count_mean", number(v.accepted_mean),
                        number(binom_mean), "exact", v.accepted_mean == binom_mean});
    v.checks.push_back({"accepted_count_variance", number(v.accepted_variance),
                        number(binom_var), "exact", v.accepted_variance == 0});
  } else {
    v.checks.push_back(
        {"accepted_count_mean", number(v.accepted_mean), number(binom_mean),
         "within 4 SE (SE=" + format_double(mean_se) + ")",
         std::abs(v.accepted_mean - binom_mean) <= 4 * mean_se});
    v.checks.push_back(
        {"accepted_count_variance", number(v.accepted_variance),
         number(binom_var), "within 5% relative",
         std::abs(v.accepted_variance - binom_var) <= 0.05 * binom_var});
  }

  // Pooled z / (1 - x) uniform on [0, 1].
  v.pooled_ks = ks_uniform_test(all.pooled, v.alpha);
  v.checks.push_back({"pooled_z_ks_uniform", number(v.pooled_ks.scaled),
                      number(v.pooled_ks.critical),
                      "sqrt(N) D <= Kolmogorov quantile at alpha=0.001",
                      v.pooled_ks.pass});

  // Each index accepted with probability 1 - x.
  v.index_z_critical = normal_upper_quantile(v.alpha / (2.0 * nd));
  if (binom_var == 0) {
    bool all_hit = std::all_of(all.index_hits.begin(), all.index_hits.end(),
                               [&](std::uint64_t h) { return h == runs; });
    v.checks.push_back({"per_index_acceptance", number(0.0), number(0.0),
                        "every index accepted", all_hit});
  } else {
    const double sd = std::sqrt(keep * x / static_cast<double>(runs));
    for (std::uint64_t h : all.index_hits) {
      const double freq = static_cast<double>(h) / static_cast<double>(runs);
      v.max_index_z = std::max(v.max_index_z, std::abs(freq - keep) / sd);
    }
    v.checks.push_back({"per_index_acceptance", number(v.max_index_z),
                        number(v.index_z_critical),
                        "max |z| <= Bonferroni quantile at alpha=0.001",
                        v.max_index_z <= v.index_z_critical});
  }

  // |A| independent of the z values.
  v.correlation_runs = all.corr_runs;
  const long double m = static_cast<long double>(all.corr_runs);
  const long double sxx = all.css - all.cs * all.cs / m;
  const long double syy = all.cmm - all.cm * all.cm / m;
  const long double sxy = all.csm - all.cs * all.cm / m;
  const double band = 4.0 / std::sqrt(static_cast<double>(all.corr_runs));
  if (sxx <= 0 || syy <= 0) {
    v.correlation = 0;
    v.checks.push_back({"size_vs_mean_z_correlation", number(0.0), number(0.0),
                        "|A| constant; correlation undefined", true});
  } else {
    v.correlation = static_cast<double>(sxy / std::sqrt(sxx * syy));
    v.checks.push_back({"size_vs_mean_z_correlation", number(v.correlation),
                        number(0.0),
                        "|r| <= 4/sqrt(runs) = " + format_double(band),
                        std::abs(v.correlation) <= band});
  }
  return v;
}

}  // namespace altseq
