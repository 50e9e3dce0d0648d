#include "altseq/cli.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "altseq/exact.hpp"
#include "altseq/parallel.hpp"
#include "altseq/stochastic.hpp"
#include "altseq/verify.hpp"

#ifndef ALTSEQ_BUILD_ID
#define ALTSEQ_BUILD_ID "unknown"
#endif

namespace altseq::cli {

const char* build_id() { return ALTSEQ_BUILD_ID; }

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OutputOptions {
  std::string format = "json";
  std::string output;
  unsigned workers = default_workers();
};

struct SeedOptions {
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  bool entropy = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", o.output,
                  "write the payload to this file (atomically) instead of stdout");
  cmd->add_option("--workers", o.workers, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_seed_options(CLI::App* cmd, SeedOptions& s) {
  cmd->add_option("--seed", s.seed, "master seed (required unless --entropy)");
  cmd->add_option("--stream", s.stream, "stream index")->capture_default_str();
  cmd->add_flag("--entropy", s.entropy,
                "draw a fresh seed and record it in the output");
}

SeedSpec resolve_seed(const SeedOptions& s, std::ostream& err) {
  if (s.seed && s.entropy) {
    throw UsageError("--seed and --entropy are mutually exclusive");
  }
  if (s.seed) return {*s.seed, s.stream};
  if (s.entropy) {
    const SeedSpec spec{entropy_seed(), s.stream};
    err << "using entropy seed " << spec.master_seed << "\n";
    return spec;
  }
  throw UsageError("randomized commands need --seed (or --entropy)");
}

void emit(const std::string& payload, const OutputOptions& o,
          std::ostream& out) {
  if (o.output.empty()) {
    out << payload;
  } else {
    write_file_atomically(o.output, payload);
  }
}

std::string render(const Report& r, const OutputOptions& o) {
  if (o.format == "json") return to_json(r).dump(2) + "\n";
  std::ostringstream ss;
  write_checks_csv(ss, r);
  return ss.str();
}

Report base_report(const std::string& command) {
  Report r;
  r.command = command;
  r.build_id = build_id();
  return r;
}

// ---- exact -----------------------------------------------------------------

struct ExactOptions {
  int n = 0;
  std::optional<Value> k;
  bool all_k = false;
  int cap = default_enumeration_cap();
  OutputOptions out;
};

int cmd_exact(const ExactOptions& o, std::ostream& out, std::ostream& err) {
  if (o.k.has_value() == o.all_k) {
    throw UsageError("exact needs exactly one of --k or --all-k");
  }
  EnumerationOptions eopts;
  eopts.cap = o.cap;
  eopts.workers = o.out.workers;
  if (o.n > o.cap) {
    throw CapacityError("n = " + std::to_string(o.n) +
                        " exceeds the enumeration cap of " +
                        std::to_string(o.cap));
  }

  std::vector<Value> ks;
  if (o.all_k) {
    for (Value k = 1; k <= std::max(1, o.n - 1); ++k) ks.push_back(k);
  } else {
    ks.push_back(*o.k);
  }

  Report r = base_report("exact");
  r.parameters = {{"n", o.n}, {"cap", o.cap}};
  if (o.all_k) {
    r.parameters["all_k"] = true;
  } else {
    r.parameters["k"] = *o.k;
  }
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "schema_version,n,k,exact_mean,armstrong_mean,equal,exact_variance\n";
  for (Value k : ks) {
    err << "enumerating S_" << o.n << " at k=" << k << "\n";
    const auto dist = enumerate_distribution(o.n, k, eopts);
    const auto stat = exact_mean_variance(dist);
    const auto formula = armstrong_mean(o.n, k);
    const bool equal = stat.mean == formula;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [len, c] : dist.counts) counts[std::to_string(len)] = c.str();
    rows.push_back({{"n", o.n},
                    {"k", k},
                    {"exact_mean", to_fraction_string(stat.mean)},
                    {"armstrong_mean", to_fraction_string(formula)},
                    {"equal", equal},
                    {"exact_variance", to_fraction_string(stat.variance)},
                    {"counts", counts}});
    csv << kTableSchemaVersion << ',' << o.n << ',' << k << ','
        << to_fraction_string(stat.mean) << ','
        << to_fraction_string(formula) << ',' << (equal ? "true" : "false")
        << ',' << to_fraction_string(stat.variance) << '\n';
  }
  r.results["rows"] = rows;
  emit(o.out.format == "json" ? to_json(r).dump(2) + "\n" : csv.str(), o.out,
       out);
  return kSuccess;
}

// ---- tables ----------------------------------------------------------------

struct TablesOptions {
  int n_max = 0;
  std::optional<Value> k;
  bool all_k = false;
  int cap = default_enumeration_cap();
  std::string validate;
  OutputOptions out;
};

int cmd_tables(const TablesOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.validate.empty()) {
    std::ifstream f(o.validate);
    if (!f) throw UsageError("cannot open " + o.validate);
    std::vector<LengthDistribution> tables;
    const bool json = o.validate.size() >= 5 &&
                      o.validate.substr(o.validate.size() - 5) == ".json";
    if (json) {
      std::stringstream ss;
      ss << f.rdbuf();
      tables = tables_from_json(ss.str());
    } else {
      tables = read_tables_csv(f);
    }
    err << "validated " << tables.size() << " tables\n";
    std::ostringstream payload;
    if (o.out.format == "json") {
      payload << tables_to_json(tables) << "\n";
    } else {
      write_tables_csv(payload, tables);
    }
    emit(payload.str(), o.out, out);
    return kSuccess;
  }
  if (o.n_max < 1) throw UsageError("tables needs --n-max >= 1 or --validate");
  if (o.k.has_value() == o.all_k) {
    throw UsageError("tables needs exactly one of --k or --all-k");
  }
  EnumerationOptions eopts;
  eopts.cap = o.cap;
  eopts.workers = o.out.workers;
  std::vector<LengthDistribution> tables;
  for (int n = 1; n <= o.n_max; ++n) {
    if (o.all_k) {
      for (Value k = 1; k <= std::max(1, n - 1); ++k) {
        tables.push_back(enumerate_distribution(n, k, eopts));
      }
    } else if (*o.k <= std::max(1, n - 1)) {
      tables.push_back(enumerate_distribution(n, *o.k, eopts));
    }
  }
  std::ostringstream payload;
  if (o.out.format == "json") {
    payload << tables_to_json(tables) << "\n";
  } else {
    write_tables_csv(payload, tables);
  }
  emit(payload.str(), o.out, out);
  return kSuccess;
}

// ---- mc --------------------------------------------------------------------

struct McOptions {
  std::size_t n = 0;
  std::optional<Value> k;
  std::optional<double> x;
  std::uint64_t samples = 0;
  std::string method = "direct";
  SeedOptions seed;
  OutputOptions out;
};

nlohmann::json summary_json(const McSummary& s, std::optional<double> target) {
  nlohmann::json j = {{"target", s.target},
                      {"estimate", number(s.estimate)},
                      {"std_error", number(s.std_error)},
                      {"samples", s.samples}};
  if (target) {
    j["formula"] = number(*target);
    j["z_score"] =
        number(s.std_error > 0 ? (s.estimate - *target) / s.std_error : 0.0);
  } else {
    j["formula"] = nullptr;
    j["z_score"] = nullptr;
  }
  return j;
}

int cmd_mc(const McOptions& o, std::ostream& out, std::ostream& err) {
  if (o.k.has_value() == o.x.has_value()) {
    throw UsageError("mc needs exactly one of --k or --x");
  }
  if (o.samples < 100) throw UsageError("mc needs --samples >= 100");
  const auto method = parse_sampling_method(o.method);
  if (o.k && method != SamplingMethod::kDirect) {
    throw UsageError("method '" + o.method + "' is only defined for --x");
  }
  if (o.k && *o.k < 0) throw UsageError("--k must be non-negative");
  if (o.x && !(*o.x >= 0 && *o.x < 1)) throw UsageError("--x must be in [0,1)");
  const SeedSpec seed = resolve_seed(o.seed, err);
  const Strength strength =
      o.k ? Strength{KStrength{*o.k}} : Strength{XStrength{*o.x}};

  err << "sampling " << o.samples << " draws at n=" << o.n << "\n";
  const auto m =
      estimate_moments(o.n, strength, o.samples, seed, method, o.out.workers);

  const int n = static_cast<int>(o.n);
  std::optional<double> mean_target;
  std::optional<double> var_target;
  Report r = base_report("mc");
  r.parameters = {{"n", o.n},
                  {"samples", o.samples},
                  {"method", to_string(method)},
                  {"seed", to_json(seed)}};
  if (o.k) {
    r.parameters["k"] = *o.k;
    if (*o.k >= 1 && *o.k <= n - 1) {
      mean_target = armstrong_mean(n, *o.k).convert_to<double>();
    }
    if (*o.k == 1 && n >= 4) var_target = stanley_variance(n).convert_to<double>();
  } else {
    r.parameters["x"] = number(*o.x);
    mean_target = corollary_mean(n, *o.x);
    var_target = corollary_variance(n, *o.x);
  }
  r.results["mean"] = summary_json(m.mean, mean_target);
  r.results["variance"] = summary_json(m.variance, var_target);
  if (o.k && *o.k < n) {
    const double denom = static_cast<double>(n - *o.k);
    r.results["mean_over_n_minus_k"] = {
        {"estimate", number(m.mean.estimate / denom)},
        {"std_error", number(m.mean.std_error / denom)},
        {"formula", number(2.0 / 3.0)}};
  }
  r.results["histogram"] = m.histogram.counts;

  if (o.out.format == "json") {
    emit(to_json(r).dump(2) + "\n", o.out, out);
  } else {
    std::ostringstream csv;
    csv << "schema_version,quantity,estimate,std_error,samples,formula,"
           "z_score,n,strength,method,master_seed,stream_index,build_id\n";
    const std::string strength_str =
        o.k ? "k=" + std::to_string(*o.k) : "x=" + format_double(*o.x);
    for (const char* q : {"mean", "variance"}) {
      const auto& j = r.results[q];
      auto field = [](const nlohmann::json& v) {
        return v.is_null() ? std::string() :
               v.is_string() ? v.get<std::string>() :
                               format_double(v.get<double>());
      };
      csv << kReportSchemaVersion << ',' << q << ','
          << field(j["estimate"]) << ',' << field(j["std_error"]) << ','
          << o.samples << ',' << field(j["formula"]) << ','
          << field(j["z_score"]) << ',' << o.n << ',' << strength_str << ','
          << to_string(method) << ',' << seed.master_seed << ','
          << seed.stream_index << ',' << build_id() << '\n';
    }
    emit(csv.str(), o.out, out);
  }
  return kSuccess;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string suite;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<std::size_t> n;
  std::optional<Value> k;
  std::optional<double> x;
  std::vector<double> xs;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> cases;
  std::optional<int> exhaustive_n_max;
  std::optional<int> recursion_n_max;
  std::optional<double> max_violation;
  int cap = default_enumeration_cap();
  SeedOptions seed;
  OutputOptions out;
};

std::vector<double> default_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const int steps = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= steps; ++i) {
    g.push_back(std::round((lo + i * step) * 1e9) / 1e9);
  }
  return g;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  EnumerationOptions eopts;
  eopts.cap = o.cap;
  eopts.workers = o.out.workers;
  const unsigned w = o.out.workers;
  const std::string& s = o.suite;
  err << "running suite " << s << "\n";

  Report r;
  if (s == "stanley") {
    r = verify_stanley(o.n_min.value_or(4), o.n_max.value_or(10), eopts);
  } else if (s == "armstrong") {
    r = verify_armstrong(o.n_min.value_or(2), o.n_max.value_or(8), eopts);
  } else if (s == "oracles") {
    OracleSuiteParams p;
    p.cases = o.cases.value_or(p.cases);
    p.random_n_max = o.n_max.value_or(p.random_n_max);
    p.exhaustive_n_max = o.exhaustive_n_max.value_or(p.exhaustive_n_max);
    p.recursion_n_max = o.recursion_n_max.value_or(p.recursion_n_max);
    if (p.random_n_max < 1 ||
        p.random_n_max > static_cast<int>(kSubsetOracleCap)) {
      throw UsageError("--n-max for oracles must be in [1, 20]");
    }
    if (p.exhaustive_n_max > 9 || p.recursion_n_max > 10) {
      throw CapacityError("exhaustive oracle sizes capped at 9 (recursion 10)");
    }
    r = verify_oracles(p, resolve_seed(o.seed, err));
  } else if (s == "select") {
    const auto xs = o.xs.empty() ? default_grid(0.1, 0.9, 0.1) : o.xs;
    r = verify_select(static_cast<int>(o.n.value_or(8)), xs,
                      o.samples.value_or(1000000), resolve_seed(o.seed, err), w,
                      eopts);
  } else if (s == "thinning") {
    r = verify_thinning(o.n.value_or(50), o.x.value_or(0.3),
                        o.runs.value_or(100000), resolve_seed(o.seed, err), w);
  } else if (s == "sandwich") {
    const std::size_t n = o.n.value_or(10000);
    const Value k = o.k.value_or(static_cast<Value>(3 * n / 10));
    r = verify_sandwich(n, k, o.trials.value_or(10000),
                        o.max_violation.value_or(n >= 10000 ? 0.005 : 0.05),
                        resolve_seed(o.seed, err), w);
  } else if (s == "ks") {
    r = verify_ks(o.n.value_or(1000), o.trials.value_or(10000),
                  resolve_seed(o.seed, err), w);
  } else if (s == "variance_max") {
    const auto grid = o.xs.empty() ? default_grid(0.0, 0.6, 0.05) : o.xs;
    r = verify_variance_max(o.n.value_or(2000), grid,
                            o.samples.value_or(100000),
                            resolve_seed(o.seed, err), w);
  } else {
    throw UsageError("unknown suite '" + s + "'");
  }
  r.build_id = build_id();
  emit(render(r, o.out), o.out, out);
  for (const auto& c : r.checks) {
    err << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "\n";
  }
  return r.passed() ? kSuccess : kVerificationFailed;
}

// ---- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::string word;
  Value k = 1;
  OutputOptions out;
};

IntWord parse_word(const std::string& text) {
  IntWord w;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    const std::string token = text.substr(start, end - start);
    Value v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc() ||
        res.ptr != token.data() + token.size()) {
      throw UsageError("malformed token '" + token + "' in --word");
    }
    if (std::find(w.begin(), w.end(), v) != w.end()) {
      throw UsageError("duplicate value " + token + " in --word");
    }
    w.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream&) {
  if (o.k < 0) throw UsageError("--k must be non-negative");
  const IntWord w = parse_word(o.word);
  const auto witness = greedy_k_alternating(w, o.k);
  const auto dp = dp_longest_k_alternating(w, o.k);
  std::optional<std::size_t> brute;
  if (w.size() <= kSubsetOracleCap) brute = subset_oracle(w, o.k);

  std::vector<std::size_t> one_based;
  for (auto i : witness.indices) one_based.push_back(i + 1);
  Report r = base_report("oracle");
  r.parameters = {{"word", w}, {"k", o.k}};
  r.results = {{"greedy_length", witness.length()},
               {"witness_indices", one_based},
               {"witness_values", witness_values(w, witness)},
               {"dp_length", dp}};
  r.results["subset_length"] =
      brute ? nlohmann::json(*brute) : nlohmann::json(nullptr);
  r.checks.push_back({"greedy = dp", witness.length(), dp, "exact",
                      witness.length() == dp});
  if (brute) {
    r.checks.push_back({"greedy = subset oracle", witness.length(), *brute,
                        "exact", witness.length() == *brute});
  }
  r.checks.push_back({"witness is k-alternating", witness.length(),
                      witness.length(), "predicate holds",
                      is_k_alternating(witness_values(w, witness), o.k)});
  r.results["agree"] = r.passed();
  emit(render(r, o.out), o.out, out);
  return r.passed() ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"altseq: longest k- and x-alternating subsequences"};
  app.require_subcommand(1);

  ExactOptions exact;
  auto* exact_cmd = app.add_subcommand("exact", "exact law of L_{n,k} over S_n");
  exact_cmd->add_option("--n", exact.n, "permutation size")->required();
  exact_cmd->add_option("--k", exact.k, "jump threshold");
  exact_cmd->add_flag("--all-k", exact.all_k, "every k in [1, n-1]");
  exact_cmd->add_option("--cap", exact.cap, "enumeration cap (max 12)")
      ->check(CLI::Range(1, kMaxEnumerationCap))
      ->capture_default_str();
  add_output_options(exact_cmd, exact.out);

  TablesOptions tables;
  auto* tables_cmd =
      app.add_subcommand("tables", "export or validate exact length tables");
  tables_cmd->add_option("--n-max", tables.n_max, "largest n");
  tables_cmd->add_option("--k", tables.k, "jump threshold");
  tables_cmd->add_flag("--all-k", tables.all_k, "every k in [1, n-1]");
  tables_cmd->add_option("--cap", tables.cap, "enumeration cap (max 12)")
      ->check(CLI::Range(1, kMaxEnumerationCap))
      ->capture_default_str();
  tables_cmd->add_option("--validate", tables.validate,
                         "re-read a CSV or .json table file and check totals");
  add_output_options(tables_cmd, tables.out);

  McOptions mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo moments of L");
  mc_cmd->add_option("--n", mc.n, "sequence length")->required();
  mc_cmd->add_option("--k", mc.k, "integer jump threshold");
  mc_cmd->add_option("--x", mc.x, "real jump threshold in [0,1)");
  mc_cmd->add_option("--samples", mc.samples, "number of draws")->required();
  mc_cmd->add_option("--method", mc.method, "direct, thinning or binomial")
      ->check(CLI::IsMember({"direct", "thinning", "binomial"}))
      ->capture_default_str();
  add_seed_options(mc_cmd, mc.seed);
  add_output_options(mc_cmd, mc.out);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("--suite", verify.suite,
                   "stanley|armstrong|select|thinning|sandwich|ks|oracles|"
                   "variance_max")
      ->required();
  verify_cmd->add_option("--n", verify.n, "size parameter");
  verify_cmd->add_option("--n-min", verify.n_min, "smallest n (exact suites)");
  verify_cmd->add_option("--n-max", verify.n_max, "largest n");
  verify_cmd->add_option("--k", verify.k, "jump threshold (sandwich)");
  verify_cmd->add_option("--x", verify.x, "real threshold (thinning)");
  verify_cmd->add_option("--xs", verify.xs, "comma-separated x grid")
      ->delimiter(',');
  verify_cmd->add_option("--samples", verify.samples, "draws per point");
  verify_cmd->add_option("--trials", verify.trials, "trials (sandwich, ks)");
  verify_cmd->add_option("--runs", verify.runs, "runs (thinning)");
  verify_cmd->add_option("--cases", verify.cases, "random cases (oracles)");
  verify_cmd->add_option("--exhaustive-n-max", verify.exhaustive_n_max,
                         "exhaustive oracle size (oracles)");
  verify_cmd->add_option("--recursion-n-max", verify.recursion_n_max,
                         "recursion check size (oracles)");
  verify_cmd->add_option("--max-violation", verify.max_violation,
                         "allowed sandwich violation fraction");
  verify_cmd->add_option("--cap", verify.cap, "enumeration cap (max 12)")
      ->check(CLI::Range(1, kMaxEnumerationCap))
      ->capture_default_str();
  add_seed_options(verify_cmd, verify.seed);
  add_output_options(verify_cmd, verify.out);

  OracleOptions oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "inspect one word with all three solvers");
  oracle_cmd->add_option("--word", oracle.word, "comma-separated distinct integers")
      ->required();
  oracle_cmd->add_option("--k", oracle.k, "jump threshold")->capture_default_str();
  add_output_options(oracle_cmd, oracle.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*exact_cmd) return cmd_exact(exact, out, err);
    if (*tables_cmd) return cmd_tables(tables, out, err);
    if (*mc_cmd) return cmd_mc(mc, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const OracleCapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const InvariantViolation& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "parameter error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsageError;
}

}  // namespace altseq::cli
