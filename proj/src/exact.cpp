#include "altseq/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "altseq/parallel.hpp"

namespace altseq {

namespace {

void check_enumeration_args(int n, Value k, int cap) {
  if (cap < 1 || cap > kMaxEnumerationCap) {
    throw std::invalid_argument("enumeration cap must be in [1, " +
                                std::to_string(kMaxEnumerationCap) + "]");
  }
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (n > cap) {
    throw CapacityError("n = " + std::to_string(n) +
                        " exceeds the enumeration cap of " +
                        std::to_string(cap));
  }
  const Value k_max = std::max<Value>(1, n - 1);
  if (k < 1 || k > k_max) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " outside [1, " + std::to_string(k_max) +
                                "] for n = " + std::to_string(n));
  }
}

double binomial_pmf(int n, int z, double p) {
  double c = 1;
  for (int i = 1; i <= z; ++i) c = c * (n - z + i) / i;
  return c * std::pow(p, z) * std::pow(1.0 - p, n - z);
}

}  // namespace

int default_enumeration_cap() {
  if (const char* env = std::getenv("ALTSEQ_ENUM_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1 && v <= kMaxEnumerationCap) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultEnumerationCap;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt LengthDistribution::total() const {
  BigInt t = 0;
  for (const auto& [len, c] : counts) t += c;
  return t;
}

void LengthDistribution::merge(const LengthDistribution& other) {
  if (other.n != n || other.k != k) {
    throw std::invalid_argument("cannot merge distributions with different (n, k)");
  }
  for (const auto& [len, c] : other.counts) counts[len] += c;
}

void LengthDistribution::check_total() const {
  const BigInt t = total();
  if (t != factorial(n)) {
    throw InvariantViolation("L_{" + std::to_string(n) + "," +
                             std::to_string(k) + "} counts sum to " +
                             t.str() + ", expected " + factorial(n).str());
  }
}

LengthDistribution enumerate_block(int n, Value k, Value first_value,
                                   std::uint64_t audit_stride) {
  if (first_value < 1 || first_value > n) {
    throw std::invalid_argument("block first value outside [1, n]");
  }
  IntWord word(static_cast<std::size_t>(n));
  word[0] = first_value;
  {
    Value v = 1;
    for (std::size_t i = 1; i < word.size(); ++i, ++v) {
      if (v == first_value) ++v;
      word[i] = v;
    }
  }

  std::vector<std::uint64_t> local(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t visited = 0;
  do {
    const std::size_t len = greedy_k_length(word, k);
    ++local[len];
    if (audit_stride != 0 && visited % audit_stride == 0) {
      const std::size_t dp = dp_longest_k_alternating(word, k);
      if (dp != len) {
        std::string w;
        for (Value v : word) w += std::to_string(v) + " ";
        throw InvariantViolation("greedy length " + std::to_string(len) +
                                 " != DP length " + std::to_string(dp) +
                                 " on word " + w + "k=" + std::to_string(k));
      }
    }
    ++visited;
  } while (std::next_permutation(word.begin() + 1, word.end()));

  LengthDistribution out{n, k, {}};
  for (std::size_t len = 0; len < local.size(); ++len) {
    if (local[len] != 0) out.counts[len] = local[len];
  }
  return out;
}

LengthDistribution enumerate_distribution(int n, Value k,
                                          const EnumerationOptions& opts) {
  check_enumeration_args(n, k, opts.cap);
  LengthDistribution out{n, k, {}};
  if (n == 0) {
    out.counts[0] = 1;
    return out;
  }
  const auto blocks = map_chunks<LengthDistribution>(
      static_cast<std::uint64_t>(n), 1, opts.workers,
      [&](const ChunkRange& c) {
        return enumerate_block(n, k, static_cast<Value>(c.index + 1),
                               opts.audit_stride);
      });
  for (const auto& b : blocks) out.merge(b);
  out.check_total();
  return out;
}

RationalStat exact_mean_variance(const LengthDistribution& d) {
  const BigInt total = d.total();
  if (d.counts.empty() || total == 0) {
    throw std::invalid_argument("empty length distribution");
  }
  BigInt s1 = 0;
  BigInt s2 = 0;
  for (const auto& [len, c] : d.counts) {
    s1 += c * len;
    s2 += c * len * len;
  }
  RationalStat out;
  out.mean = Rational(s1, total);
  out.variance = Rational(s2, total) - out.mean * out.mean;
  return out;
}

Rational stanley_mean(int n) { return Rational(4 * n + 1, 6); }

Rational stanley_variance(int n) {
  return Rational(8 * n, 45) - Rational(13, 180);
}

Rational armstrong_mean(int n, Value k) {
  return Rational(BigInt(4 * (n - k) + 5), BigInt(6));
}

double corollary_mean(int n, double x) {
  return 2.0 / 3.0 * n * (1.0 - x) + 1.0 / 6.0;
}

double corollary_variance(int n, double x) {
  return (1.0 - x) * (2.0 + 5.0 * x) * 4.0 * n / 45.0;
}

double corollary_variance_with_constant(int n, double x) {
  return 8.0 * n * (1.0 - x) / 45.0 - 13.0 / 180.0 +
         4.0 / 9.0 * n * x * (1.0 - x);
}

Rational corollary_mean(int n, const Rational& x) {
  return Rational(2, 3) * n * (1 - x) + Rational(1, 6);
}

Rational corollary_variance(int n, const Rational& x) {
  return (1 - x) * (2 + 5 * x) * Rational(4 * n, 45);
}

Rational corollary_variance_with_constant(int n, const Rational& x) {
  return Rational(8 * n, 45) * (1 - x) - Rational(13, 180) +
         Rational(4, 9) * n * x * (1 - x);
}

double MixtureDistribution::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double MixtureDistribution::mean() const {
  double m = 0;
  for (std::size_t v = 0; v < probs.size(); ++v) m += v * probs[v];
  return m;
}

double MixtureDistribution::variance() const {
  const double m = mean();
  double s = 0;
  for (std::size_t v = 0; v < probs.size(); ++v) {
    const double d = static_cast<double>(v) - m;
    s += d * d * probs[v];
  }
  return s;
}

MixtureDistribution mixture_distribution(
    int n, double x, std::span<const LengthDistribution> k1_tables,
    EmptyDrawLength empty_draw) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("x must be in [0,1)");

  MixtureDistribution out;
  out.n = n;
  out.x = x;
  out.empty_draw = empty_draw;
  out.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);

  const double keep = 1.0 - x;
  const std::size_t empty_length =
      (empty_draw == EmptyDrawLength::kOne && n >= 1) ? 1 : 0;
  out.probs[empty_length] += binomial_pmf(n, 0, keep);

  for (int z = 1; z <= n; ++z) {
    const auto it = std::find_if(
        k1_tables.begin(), k1_tables.end(),
        [z](const LengthDistribution& d) { return d.n == z && d.k == 1; });
    if (it == k1_tables.end()) {
      throw DependencyError("mixture needs the k=1 table for n=" +
                            std::to_string(z));
    }
    const double weight = binomial_pmf(n, z, keep);
    const double perms = factorial(z).convert_to<double>();
    for (const auto& [len, c] : it->counts) {
      out.probs[len] += weight * c.convert_to<double>() / perms;
    }
  }
  return out;
}

std::vector<LengthDistribution> k1_tables(int n_max,
                                          const EnumerationOptions& opts) {
  std::vector<LengthDistribution> out;
  for (int z = 1; z <= n_max; ++z) {
    out.push_back(enumerate_distribution(z, 1, opts));
  }
  return out;
}

double mixture_mean_offset(int n, double x, EmptyDrawLength empty_draw) {
  if (n == 0) return -1.0 / 6.0;
  const double keep = 1.0 - x;
  const double p0 = binomial_pmf(n, 0, keep);
  const double p1 = binomial_pmf(n, 1, keep);
  const double l0 = empty_draw == EmptyDrawLength::kOne ? 1.0 : 0.0;
  return p0 * (l0 - 1.0 / 6.0) + p1 * (1.0 - 5.0 / 6.0);
}

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed fraction '" + s + "'");
  }
}

}  // namespace altseq
