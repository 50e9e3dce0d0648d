// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "altseq/cli.hpp"
#include "altseq/exact.hpp"
#include "altseq/parallel.hpp"
#include "altseq/stochastic.hpp"
#include "altseq/verify.hpp"

using namespace altseq;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

std::string failing_checks(const Report& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (!c.pass) out += " [" + c.name + ": " + c.observed.dump() + "]";
  }
  return out;
}

Verdict from_report(const Report& r, const std::string& summary) {
  return {r.passed(), summary + (r.passed() ? "" : " failing:" + failing_checks(r))};
}

const Check* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

unsigned workers() { return default_workers(); }

Verdict ac1() {
  EnumerationOptions opts;
  opts.workers = workers();
  const auto r = verify_stanley(4, 10, opts);
  return from_report(r, std::to_string(r.checks.size()) +
                            " exact mean/variance equalities for n=4..10");
}

Verdict ac2() {
  EnumerationOptions opts;
  opts.workers = workers();
  const auto r = verify_armstrong(2, 8, opts);
  std::size_t counterexamples = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("counterexample", 0) == 0) ++counterexamples;
  }
  return from_report(r, std::to_string(r.checks.size()) + " (n,k) pairs, " +
                            std::to_string(counterexamples) + " counterexamples");
}

Report oracle_report() {
  static const Report r = verify_oracles(OracleSuiteParams{1000, 12, 6, 8},
                                         SeedSpec{kSeed, 3});
  return r;
}

Verdict ac3() {
  const auto r = oracle_report();
  bool pass = true;
  std::string failing;
  for (const auto& c : r.checks) {
    if (c.name == "first-letter recursion") continue;
    if (!c.pass) {
      pass = false;
      failing += " [" + c.name + "]";
    }
  }
  return {pass, r.results["exhaustive_instances"].dump() +
                    " exhaustive instances (n<=6, all k) + 1000 random (n<=12)" +
                    failing};
}

Verdict ac4() {
  const auto r = oracle_report();
  const auto* c = find_check(r, "first-letter recursion");
  if (!c) return {false, "recursion check missing"};
  return {c->pass, r.results["recursion_instances"].dump() +
                       " (permutation, k) instances for n<=8, failures " +
                       c->observed.dump()};
}

Verdict ac5() {
  std::vector<double> xs;
  for (int i = 1; i <= 9; ++i) xs.push_back(i / 10.0);
  EnumerationOptions opts;
  opts.workers = workers();
  const auto r = verify_select(8, xs, 1000000, SeedSpec{kSeed, 5}, workers(), opts);
  double worst_tv = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("direct vs mixture TV", 0) == 0) {
      worst_tv = std::max(worst_tv, c.observed.get<double>());
    }
  }
  return from_report(r, "n=8, x=0.1..0.9, 10^6 draws each, max TV " + fmt(worst_tv));
}

Verdict ac6() {
  const std::size_t n = 10000;
  const double x = 0.3;
  const auto m = estimate_moments(n, XStrength{x}, 1000000, SeedSpec{kSeed, 6},
                                  SamplingMethod::kDirect, workers());
  const double mean_target = 4666.8333;
  const double var_target = 2177.78;
  const double z = (m.mean.estimate - mean_target) / m.mean.std_error;
  const double rel = std::abs(m.variance.estimate - var_target) / var_target;
  const bool pass = std::abs(z) <= 4 && rel <= 0.05;
  return {pass, "mean " + fmt(m.mean.estimate) + " (z=" + fmt(z) + ", |z|<=4), variance " +
                    fmt(m.variance.estimate) + " (rel dev " + fmt(rel) + ", <=0.05)"};
}

Verdict ac7() {
  struct Case {
    std::size_t n;
    Value k;
  };
  const Case cases[] = {{1000, 300}, {10000, 3000}};
  bool pass = true;
  std::vector<double> deviation;
  std::ostringstream d;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto [n, k] = cases[i];
    const auto m = estimate_moments(n, KStrength{k}, 100000, SeedSpec{kSeed, 70 + i},
                                    SamplingMethod::kDirect, workers());
    const double ratio = m.mean.estimate / static_cast<double>(n - k);
    const double half = 2 * std::cbrt(1.0 / static_cast<double>(n));
    const bool in = std::abs(ratio - 2.0 / 3) <= half;
    pass = pass && in;
    deviation.push_back(std::abs(ratio - 2.0 / 3));
    d << "n=" << n << " k=" << k << " ratio " << fmt(ratio) << " in 2/3+-" << fmt(half)
      << (in ? "" : " (outside)") << "; ";
  }
  const bool shrinks = deviation[1] < deviation[0];
  pass = pass && shrinks;
  d << "|ratio-2/3| " << fmt(deviation[0]) << " -> " << fmt(deviation[1])
    << (shrinks ? " shrinks" : " does not shrink");
  return {pass, d.str()};
}

Verdict ac8() {
  const auto small = verify_sandwich(1000, 300, 10000, 0.05, SeedSpec{kSeed, 81}, workers());
  const auto large = verify_sandwich(10000, 3000, 10000, 0.005, SeedSpec{kSeed, 82}, workers());
  const double nan = std::nan("");
  const double vs = small.results.value("violation_fraction", nan);
  const double vl = large.results.value("violation_fraction", nan);
  const double ks_s = small.results.value("ks_exceeded_fraction", nan);
  const double ks_l = large.results.value("ks_exceeded_fraction", nan);
  const bool monotone = vl <= vs;
  const bool pass = small.passed() && large.passed() && monotone;
  std::string detail = "violation fraction " + fmt(vs) + " (n=10^3, <=0.05) -> " + fmt(vl) +
                       " (n=10^4, <=0.005), non-increasing " + (monotone ? "yes" : "no") +
                       "; KS-exceed fraction " + fmt(ks_s) + " -> " + fmt(ks_l) +
                       "; per-trial assertion held";
  if (!small.passed()) detail += " n=10^3 failing:" + failing_checks(small);
  if (!large.passed()) detail += " n=10^4 failing:" + failing_checks(large);
  return {pass, detail};
}

Verdict ac9() {
  const auto r = verify_thinning(50, 0.3, 100000, SeedSpec{kSeed, 9}, workers());
  std::ostringstream d;
  d << "|A| mean " << fmt(r.results["accepted_mean"].get<double>()) << ", variance "
    << fmt(r.results["accepted_variance"].get<double>()) << ", " << r.checks.size()
    << " checks incl. mutation";
  return from_report(r, d.str());
}

Verdict ac10() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(i / 20.0);
  const auto r = verify_variance_max(2000, grid, 100000, SeedSpec{kSeed, 100}, workers());
  const auto* c = find_check(r, "fitted argmax");
  if (!c) return {false, "fitted argmax check missing"};
  return {c->pass, "fitted argmax " + c->observed.dump() + " (within 0.05 of 0.3)"};
}

std::string cli_output(std::vector<std::string> args, const std::string& w) {
  args.insert(args.end(), {"--workers", w});
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Verdict ac11() {
  const std::vector<std::vector<std::string>> invocations{
      {"mc", "--n", "2000", "--x", "0.3", "--samples", "20000", "--seed", "11", "--format",
       "json"},
      {"mc", "--n", "500", "--k", "100", "--samples", "20000", "--seed", "11", "--format",
       "csv"},
      {"mc", "--n", "40", "--x", "0.4", "--samples", "20000", "--seed", "11", "--method",
       "binomial", "--format", "json"},
      {"verify", "--suite", "sandwich", "--n", "1000", "--k", "300", "--trials", "10000",
       "--seed", "11", "--format", "json"},
      {"verify", "--suite", "thinning", "--n", "50", "--x", "0.3", "--runs", "10000",
       "--seed", "11", "--format", "csv"},
  };
  bool pass = true;
  std::size_t compared = 0;
  for (const auto& args : invocations) {
    const auto reference = cli_output(args, "1");
    for (const char* w : {"1", "2", "7"}) {
      ++compared;
      if (cli_output(args, w) != reference) {
        pass = false;
        return {false, "output differs for '" + args[0] + " " + args[1] + " ...' with --workers " + w};
      }
    }
  }
  return {pass, std::to_string(invocations.size()) + " invocations, " +
                    std::to_string(compared) + " reruns with workers 1/2/7 byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"exact Stanley mean and variance, n=4..10", ac1},
      {"Armstrong mean formula, n=2..8, all k", ac2},
      {"oracle triangle greedy=DP=subset", ac3},
      {"first-letter recursion, n<=8", ac4},
      {"direct x-sampling matches binomial mixture, n=8", ac5},
      {"mean and variance at n=10^4, x=0.3", ac6},
      {"mean/(n-k) window and shrinking deviation", ac7},
      {"sandwich assertion and violation fractions", ac8},
      {"thinning acceptance pattern and uniformity", ac9},
      {"variance maximum near x=0.3, n=2000", ac10},
      {"CLI output identical across worker counts", ac11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("AC%-2zu %s  %s: %s (%.1fs)\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
