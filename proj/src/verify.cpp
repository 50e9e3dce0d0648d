#include "altseq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "altseq/stochastic.hpp"

namespace altseq {

namespace {

constexpr double kAlpha = 0.001;

Check exact_check(std::string name, const Rational& observed,
                  const Rational& expected) {
  return {std::move(name), to_fraction_string(observed),
          to_fraction_string(expected), "exact", observed == expected};
}

Check count_check(std::string name, std::uint64_t failures,
                  std::uint64_t instances) {
  return {std::move(name), failures, 0,
          "zero mismatches over " + std::to_string(instances) + " instances",
          failures == 0};
}

IntWord random_word(Rng& rng, std::size_t n) {
  // Half permutations of {1..n}, half distinct values drawn from [1, 3n].
  if (rng.below(2) == 0) {
    IntWord w(n);
    std::iota(w.begin(), w.end(), Value{1});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(w[i - 1], w[rng.below(i)]);
    }
    return w;
  }
  IntWord pool(3 * n);
  std::iota(pool.begin(), pool.end(), Value{1});
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  pool.resize(n);
  return pool;
}

}  // namespace

Report verify_stanley(int n_min, int n_max, const EnumerationOptions& opts) {
  Report r;
  r.command = "verify";
  r.suite = "stanley";
  r.parameters = {{"n_min", n_min}, {"n_max", n_max}};
  for (int n = n_min; n <= n_max; ++n) {
    const auto stat = exact_mean_variance(enumerate_distribution(n, 1, opts));
    const std::string tag = " n=" + std::to_string(n);
    r.checks.push_back(exact_check("mean" + tag, stat.mean, stanley_mean(n)));
    r.checks.push_back(
        exact_check("variance" + tag, stat.variance, stanley_variance(n)));
  }
  return r;
}

Report verify_armstrong(int n_min, int n_max, const EnumerationOptions& opts) {
  Report r;
  r.command = "verify";
  r.suite = "armstrong";
  r.parameters = {{"n_min", n_min}, {"n_max", n_max}};
  nlohmann::json counterexamples = nlohmann::json::array();
  for (int n = n_min; n <= n_max; ++n) {
    for (Value k = 1; k <= std::max<Value>(1, n - 1); ++k) {
      const auto stat = exact_mean_variance(enumerate_distribution(n, k, opts));
      const auto expected = armstrong_mean(n, k);
      const bool ok = stat.mean == expected;
      const std::string tag =
          "n=" + std::to_string(n) + " k=" + std::to_string(k);
      r.checks.push_back(exact_check(ok ? "mean " + tag : "counterexample " + tag,
                                     stat.mean, expected));
      if (!ok) {
        counterexamples.push_back({{"n", n},
                                   {"k", k},
                                   {"exact_mean", to_fraction_string(stat.mean)},
                                   {"formula", to_fraction_string(expected)}});
      }
    }
  }
  r.results["counterexamples"] = counterexamples;
  return r;
}

Report verify_oracles(const OracleSuiteParams& p, const SeedSpec& seed) {
  Report r;
  r.command = "verify";
  r.suite = "oracles";
  r.parameters = {{"cases", p.cases},
                  {"random_n_max", p.random_n_max},
                  {"exhaustive_n_max", p.exhaustive_n_max},
                  {"recursion_n_max", p.recursion_n_max},
                  {"seed", to_json(seed)}};

  // Exhaustive: every permutation up to exhaustive_n_max, every k.
  std::uint64_t instances = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t invalid_witness = 0;
  for (int n = 1; n <= p.exhaustive_n_max; ++n) {
    IntWord w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), Value{1});
    do {
      for (Value k = 1; k <= std::max<Value>(1, n - 1); ++k) {
        const auto witness = greedy_k_alternating(w, k);
        const auto dp = dp_longest_k_alternating(w, k);
        const auto brute = subset_oracle(w, k);
        ++instances;
        if (witness.length() != dp || dp != brute) ++mismatches;
        if (!is_k_alternating(witness_values(w, witness), k)) ++invalid_witness;
      }
    } while (std::next_permutation(w.begin(), w.end()));
  }
  r.checks.push_back(count_check("exhaustive greedy=dp=subset", mismatches,
                                 instances));

  // Seeded random words, including non-permutation value sets.
  Rng rng(seed);
  std::uint64_t random_mismatches = 0;
  std::uint64_t x_mismatches = 0;
  std::uint64_t bookkeeping_mismatches = 0;
  for (std::uint64_t c = 0; c < p.cases; ++c) {
    const auto n = static_cast<std::size_t>(
        1 + rng.below(static_cast<std::uint64_t>(p.random_n_max)));
    const auto w = random_word(rng, n);
    const auto k = static_cast<Value>(1 + rng.below(std::max<std::size_t>(1, n)));
    const auto witness = greedy_k_alternating(w, k);
    if (witness.length() != dp_longest_k_alternating(w, k) ||
        witness.length() != subset_oracle(w, k)) {
      ++random_mismatches;
    }
    if (!is_k_alternating(witness_values(w, witness), k)) ++invalid_witness;

    const auto y = sample_real_seq(n, rng);
    const double x = rng.uniform01() * 0.9;
    const auto xw = greedy_x_alternating(y, x, false);
    if (xw.length() != dp_longest_x_alternating(y, x) ||
        xw.length() != subset_oracle(y, x)) {
      ++x_mismatches;
    }
    if (!is_x_alternating(witness_values(y, xw), x)) ++invalid_witness;
    if (greedy_x_alternating(y, x, true) != xw) ++bookkeeping_mismatches;
  }
  r.checks.push_back(
      count_check("random greedy=dp=subset", random_mismatches, p.cases));
  r.checks.push_back(
      count_check("random x-mode greedy=dp=subset", x_mismatches, p.cases));
  r.checks.push_back(count_check("reject-high-start witness unchanged",
                                 bookkeeping_mismatches, p.cases));
  r.checks.push_back(count_check("witnesses satisfy predicate", invalid_witness,
                                 instances + 2 * p.cases));

  // Three-case recursion on the first two letters, L and L* from the DP.
  std::uint64_t rec_instances = 0;
  std::uint64_t rec_failures = 0;
  for (int n = 2; n <= p.recursion_n_max; ++n) {
    IntWord s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), Value{1});
    do {
      const IntWord drop_first(s.begin() + 1, s.end());
      IntWord drop_second = s;
      drop_second.erase(drop_second.begin() + 1);
      for (Value k = 1; k <= n - 1; ++k) {
        const auto whole = dp_longest_k_alternating(s, k);
        std::size_t predicted = 0;
        if (s[0] > s[1]) {
          predicted = dp_longest_k_alternating(drop_first, k);
        } else if (s[1] < s[0] + k) {
          predicted = dp_longest_k_alternating(drop_second, k);
        } else {
          predicted =
              1 + dp_longest_k_alternating(drop_first, k, Direction::kDown);
        }
        ++rec_instances;
        if (whole != predicted) ++rec_failures;
      }
    } while (std::next_permutation(s.begin(), s.end()));
  }
  r.checks.push_back(
      count_check("first-letter recursion", rec_failures, rec_instances));
  r.results = {{"exhaustive_instances", instances},
               {"recursion_instances", rec_instances}};
  return r;
}

Report verify_select(int n, std::span<const double> xs, std::uint64_t samples,
                     const SeedSpec& seed, unsigned workers,
                     const EnumerationOptions& opts) {
  Report r;
  r.command = "verify";
  r.suite = "select";
  r.parameters = {{"n", n},
                  {"xs", std::vector<double>(xs.begin(), xs.end())},
                  {"samples", samples},
                  {"seed", to_json(seed)}};
  const auto tables = k1_tables(n, opts);
  nlohmann::json per_x = nlohmann::json::array();

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const std::string tag = " x=" + format_double(x);
    const auto with_singleton =
        mixture_distribution(n, x, tables, EmptyDrawLength::kOne);
    const auto as_stated =
        mixture_distribution(n, x, tables, EmptyDrawLength::kZero);

    r.checks.push_back({"mixture mass" + tag, number(as_stated.total()),
                        number(1.0), "within 1e-12",
                        std::abs(as_stated.total() - 1.0) <= 1e-12});
    for (auto mix : {&as_stated, &with_singleton}) {
      const double predicted =
          corollary_mean(n, x) + mixture_mean_offset(n, x, mix->empty_draw);
      const char* label =
          mix->empty_draw == EmptyDrawLength::kZero ? "L_0=0" : "L_0=1";
      r.checks.push_back({std::string("mixture mean (") + label + ")" + tag,
                          number(mix->mean()), number(predicted),
                          "corollary mean + small-Z offset within 1e-10",
                          std::abs(mix->mean() - predicted) <= 1e-10});
    }

    const SeedSpec direct_seed{seed.master_seed, seed.stream_index + 2 * i};
    const SeedSpec recipe_seed{seed.master_seed, seed.stream_index + 2 * i + 1};
    const auto direct = sample_lengths(n, XStrength{x}, samples, direct_seed,
                                       SamplingMethod::kDirect, workers);
    const auto recipe = sample_lengths(n, XStrength{x}, samples, recipe_seed,
                                       SamplingMethod::kBinomial, workers);

    const auto chi = chi_square_gof(direct, with_singleton.probs, kAlpha);
    const double tv = total_variation(direct, with_singleton.probs);
    r.checks.push_back({"direct vs mixture chi2" + tag, number(chi.statistic),
                        number(chi.critical),
                        "chi2(" + std::to_string(chi.dof) +
                            ") <= critical at alpha=0.001",
                        chi.pass});
    r.checks.push_back({"direct vs mixture TV" + tag, number(tv), number(0.01),
                        "TV < 0.01", tv < 0.01});

    const auto recipe_chi = chi_square_gof(recipe, as_stated.probs, kAlpha);
    r.checks.push_back({"recipe vs mixture chi2" + tag,
                        number(recipe_chi.statistic),
                        number(recipe_chi.critical),
                        "chi2(" + std::to_string(recipe_chi.dof) +
                            ") <= critical at alpha=0.001",
                        recipe_chi.pass});

    per_x.push_back(
        {{"x", x},
         {"empty_draw_mass", number(std::pow(x, n))},
         {"direct_vs_stated_mixture_tv", number(total_variation(direct, as_stated.probs))},
         {"direct_vs_mixture_p_value", number(chi.p_value)},
         {"mixture_mean", number(with_singleton.mean())},
         {"corollary_mean", number(corollary_mean(n, x))}});
  }
  r.results["per_x"] = per_x;
  return r;
}

Report verify_thinning(std::size_t n, double x, std::uint64_t runs,
                       const SeedSpec& seed, unsigned workers) {
  Report r;
  r.command = "verify";
  r.suite = "thinning";
  r.parameters = {
      {"n", n}, {"x", x}, {"runs", runs}, {"seed", to_json(seed)}};
  const auto v = validate_thinning(n, x, runs, seed, workers);
  r.checks = v.checks;
  r.results = {{"accepted_mean", number(v.accepted_mean)},
               {"accepted_variance", number(v.accepted_variance)},
               {"rejected_mean", number(v.rejected_mean)},
               {"pooled_values", v.pooled_ks.n},
               {"correlation", number(v.correlation)}};
  if (x > 0) {
    const auto mutant = validate_thinning(n, x, runs, seed, workers,
                                          ThinningVariant::kOmitShift);
    r.checks.push_back({"mutation (no -x shift) caught by KS",
                        number(mutant.pooled_ks.scaled),
                        number(mutant.pooled_ks.critical),
                        "mutant fails KS uniformity", !mutant.pooled_ks.pass});
  }
  return r;
}

Report verify_sandwich(std::size_t n, Value k, std::uint64_t trials,
                       double max_violation, const SeedSpec& seed,
                       unsigned workers) {
  Report r;
  r.command = "verify";
  r.suite = "sandwich";
  r.parameters = {{"n", n},
                  {"k", k},
                  {"trials", trials},
                  {"max_violation", max_violation},
                  {"seed", to_json(seed)}};
  try {
    const auto o = sandwich_trials(n, k, trials, seed, workers);
    r.checks.push_back({"ks_sup small implies sandwich", "no failures",
                        "no failures", "per-trial hard assertion", true});
    r.checks.push_back({"violation fraction", number(o.violation_fraction()),
                        number(max_violation), "<= max_violation",
                        o.violation_fraction() <= max_violation});
    r.results = {{"x1", number(o.x1)},
                 {"x2", number(o.x2)},
                 {"ks_threshold", number(o.ks_threshold)},
                 {"holds", o.holds},
                 {"lower_violated", o.lower_violated},
                 {"upper_violated", o.upper_violated},
                 {"ks_exceeded", o.ks_exceeded},
                 {"violation_fraction", number(o.violation_fraction())},
                 {"ks_exceeded_fraction", number(o.ks_exceeded_fraction())}};
  } catch (const InvariantViolation& e) {
    r.checks.push_back({"ks_sup small implies sandwich", e.what(),
                        "no failures", "per-trial hard assertion", false});
  }
  return r;
}

Report verify_ks(std::size_t n, std::uint64_t trials, const SeedSpec& seed,
                 unsigned workers) {
  Report r;
  r.command = "verify";
  r.suite = "ks";
  r.parameters = {{"n", n}, {"trials", trials}, {"seed", to_json(seed)}};
  const auto c = ks_convergence(n, trials, seed, workers);
  const double gap_band =
      kolmogorov_quantile(1 - kAlpha) / std::sqrt(static_cast<double>(trials)) +
      0.01;
  r.checks.push_back({"sup |F_emp - Kolmogorov|", number(c.max_cdf_gap),
                      number(gap_band),
                      "<= K_{0.999}/sqrt(trials) + 0.01 finite-n allowance",
                      c.max_cdf_gap <= gap_band});
  const double tail_band =
      c.tail_limit + 4 * std::sqrt(c.tail_limit * (1 - c.tail_limit) /
                                   static_cast<double>(trials)) +
      4.0 / static_cast<double>(trials);
  r.checks.push_back({"P(ks_sup > n^(-1/3)/2)", number(c.tail_fraction),
                      number(tail_band), "<= Kolmogorov tail + 4 SE",
                      c.tail_fraction <= tail_band});
  r.results = {{"mean_scaled", number(c.mean_scaled)},
               {"kolmogorov_mean", number(std::sqrt(std::numbers::pi / 2) *
                                          std::log(2.0))},
               {"tail_limit", number(c.tail_limit)}};
  return r;
}

Report verify_variance_max(std::size_t n, std::span<const double> grid,
                           std::uint64_t samples, const SeedSpec& seed,
                           unsigned workers) {
  Report r;
  r.command = "verify";
  r.suite = "variance_max";
  r.parameters = {{"n", n},
                  {"grid", std::vector<double>(grid.begin(), grid.end())},
                  {"samples", samples},
                  {"seed", to_json(seed)}};

  // Closed form (1 - x)(2 + 5x) on a fine grid.
  double best_x = 0;
  double best_v = -1;
  for (int i = 0; i <= 100000; ++i) {
    const double x = i / 100000.0;
    const double v = (1 - x) * (2 + 5 * x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  r.checks.push_back({"closed-form argmax", number(best_x), number(0.3),
                      "within 1e-5", std::abs(best_x - 0.3) <= 1e-5});

  const auto curve = variance_curve(n, grid, samples, seed, workers);
  r.checks.push_back({"fitted argmax", number(curve.fitted_argmax), number(0.3),
                      "within 0.05",
                      std::isfinite(curve.fitted_argmax) &&
                          std::abs(curve.fitted_argmax - 0.3) <= 0.05});

  auto endpoint = [&](double x, std::uint64_t offset) {
    const SeedSpec point_seed{seed.master_seed,
                              seed.stream_index + grid.size() + offset};
    return estimate_from_histogram(sample_lengths(
        n, XStrength{x}, samples, point_seed, SamplingMethod::kDirect, workers));
  };
  const auto at3 = endpoint(0.3, 0);
  const auto at9 = endpoint(0.9, 1);
  const double gap = at3.variance - at9.variance;
  const double combined =
      std::sqrt(at3.variance_se * at3.variance_se +
                at9.variance_se * at9.variance_se);
  r.checks.push_back({"variance(0.9) below variance(0.3)", number(gap / combined),
                      number(3.0), "gap >= 3 combined SE", gap >= 3 * combined});

  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"x", number(p.x)},
                      {"mean", number(p.mean)},
                      {"variance", number(p.variance)},
                      {"variance_se", number(p.variance_se)},
                      {"formula", number(corollary_variance(
                                      static_cast<int>(n), p.x))}});
  }
  r.results = {{"points", points},
               {"coefficients", {number(curve.coefficients[0]),
                                 number(curve.coefficients[1]),
                                 number(curve.coefficients[2])}}};
  return r;
}

}  // namespace altseq
