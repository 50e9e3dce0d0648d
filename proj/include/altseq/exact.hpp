// Exact statistics of L_{n,k} over the whole symmetric group, the closed
// forms they are compared against, and the binomial mixture that gives the
// law of L_{n,x} from the k = 1 tables.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "altseq/core.hpp"

namespace altseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Requested work exceeds a configured size limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An input that an operation depends on was not supplied.
class DependencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal cross-check between two independent computations failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kDefaultEnumerationCap = 11;
inline constexpr int kMaxEnumerationCap = 12;

// ALTSEQ_ENUM_CAP if set and within [1, kMaxEnumerationCap], else 11.
int default_enumeration_cap();

struct LengthDistribution {
  int n = 0;
  Value k = 1;
  std::map<std::size_t, BigInt> counts;  // length -> #permutations

  BigInt total() const;
  // Adds counts of a run over a disjoint part of S_n with the same (n, k).
  void merge(const LengthDistribution& other);
  // Throws InvariantViolation unless the counts add up to n!.
  void check_total() const;

  bool operator==(const LengthDistribution&) const = default;
};

struct RationalStat {
  Rational mean;
  Rational variance;

  bool operator==(const RationalStat&) const = default;
};

struct EnumerationOptions {
  int cap = default_enumeration_cap();
  unsigned workers = 1;
  // Every audit_stride-th permutation of each block is re-solved with the
  // dynamic program; 0 disables the audit.
  std::uint64_t audit_stride = 10000;
};

BigInt factorial(int n);

// Counts L_{n,k} over the permutations of {1..n} whose first entry is
// `first_value`, visited in lexicographic order.
LengthDistribution enumerate_block(int n, Value k, Value first_value,
                                   std::uint64_t audit_stride = 10000);

// Exact law of L_{n,k}: one block per first value, merged in block order.
// n = 0 yields the single empty permutation with length 0.
LengthDistribution enumerate_distribution(int n, Value k,
                                          const EnumerationOptions& opts = {});

RationalStat exact_mean_variance(const LengthDistribution& d);

Rational stanley_mean(int n);                // (4n + 1) / 6
Rational stanley_variance(int n);            // 8n/45 - 13/180
Rational armstrong_mean(int n, Value k);     // (4(n - k) + 5) / 6

// Mean and variance of L_{n,x} from the binomial mixture, as displayed:
//   (2/3) n (1 - x) + 1/6   and   (1 - x)(2 + 5x) 4n / 45.
double corollary_mean(int n, double x);
double corollary_variance(int n, double x);
Rational corollary_mean(int n, const Rational& x);
Rational corollary_variance(int n, const Rational& x);

// Intermediate form of the variance before the constant -13/180 is dropped:
//   8n(1 - x)/45 - 13/180 + (4/9) n x (1 - x).
double corollary_variance_with_constant(int n, double x);
Rational corollary_variance_with_constant(int n, const Rational& x);

// What the Z = 0 component of the mixture contributes. The recipe as stated
// takes the longest alternating subsequence of the empty permutation
// (length 0). A nonempty real sequence always has an x-alternating
// subsequence of length 1, so the direct law puts that mass on length 1.
enum class EmptyDrawLength { kZero, kOne };

struct MixtureDistribution {
  int n = 0;
  double x = 0;
  EmptyDrawLength empty_draw = EmptyDrawLength::kZero;
  std::vector<double> probs;  // index = length

  double mean() const;
  double variance() const;
  double total() const;
};

// probs(m) = sum_z C(n,z) (1-x)^z x^(n-z) P(L_{z,1} = m). `k1_tables` must
// contain the k = 1 table for every z in 1..n (z = 0 is implicit); throws
// DependencyError otherwise.
MixtureDistribution mixture_distribution(
    int n, double x, std::span<const LengthDistribution> k1_tables,
    EmptyDrawLength empty_draw = EmptyDrawLength::kZero);

// The k = 1 tables for z = 1..n_max.
std::vector<LengthDistribution> k1_tables(int n_max,
                                          const EnumerationOptions& opts = {});

// mixture mean - corollary_mean. Stanley's mean formula is exact for
// z >= 2 only, so the difference is carried by the z = 0 and z = 1 terms:
//   P(Z=0) (L_0 - 1/6) + P(Z=1) (1 - 5/6).
double mixture_mean_offset(int n, double x, EmptyDrawLength empty_draw);

// "p/q" rendering and parsing of exact values.
std::string to_fraction_string(const Rational& r);
Rational parse_fraction(const std::string& s);

// Table interchange. CSV columns: schema_version,n,k,length,count.
inline constexpr int kTableSchemaVersion = 1;
void write_tables_csv(std::ostream& out,
                      std::span<const LengthDistribution> tables);
std::vector<LengthDistribution> read_tables_csv(std::istream& in);
std::string tables_to_json(std::span<const LengthDistribution> tables);
std::vector<LengthDistribution> tables_from_json(const std::string& text);

}  // namespace altseq
