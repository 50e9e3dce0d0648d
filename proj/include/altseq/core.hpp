// Longest k- and x-alternating subsequences: predicates, the rank map and
// greedy extraction, plus two brute-force oracles used to cross-check them.
//
// Conventions used throughout:
//   * An alternating pattern is up-first (w[0] < w[1] > w[2] < ...) unless a
//     Direction::kDown start is requested explicitly.
//   * A k-alternating step has |jump| >= k; an x-alternating step has
//     |jump| >= x. Sequences of length 0 or 1 are vacuously alternating.
//   * Indices are 0-based. The CLI converts to 1-based for display.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace altseq {

using Value = std::int64_t;
using IntWord = std::vector<Value>;     // distinct integers
using Permutation = std::vector<Value>; // values exactly {1..n}
using RealSeq = std::vector<double>;    // values in [0,1]

enum class Direction { kUp, kDown };

constexpr Direction flip(Direction d) {
  return d == Direction::kUp ? Direction::kDown : Direction::kUp;
}

const char* to_string(Direction d);

struct KStrength {
  Value k = 1;
};
struct XStrength {
  double x = 0.0;
};
using Strength = std::variant<KStrength, XStrength>;

// Index set of an alternating subsequence of some parent sequence.
struct AltWitness {
  std::vector<std::size_t> indices;  // strictly increasing
  Direction first_direction = Direction::kUp;

  std::size_t length() const { return indices.size(); }
  bool operator==(const AltWitness&) const = default;
};

// Raised when a brute-force oracle is asked for more than it can enumerate.
class OracleCapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Rank map: out[j] = #{ i : y[i] <= y[j] }. Ties are broken by index so the
// output is always a permutation of {1..n}.
Permutation psi(std::span<const double> y);

bool is_permutation_of_1_to_n(std::span<const Value> w);
bool has_distinct_values(std::span<const Value> w);

bool is_k_alternating(std::span<const Value> w, Value k,
                      Direction first = Direction::kUp);
bool is_x_alternating(std::span<const double> y, double x,
                      Direction first = Direction::kUp);

// Values of `parent` at `w.indices`.
IntWord witness_values(std::span<const Value> parent, const AltWitness& w);
RealSeq witness_values(std::span<const double> parent, const AltWitness& w);

// Classical k = 1 selection: keep index 0 iff w[0] < w[1], every interior
// peak and valley, and the last index. Optimal for ordinary alternation.
AltWitness peak_valley_witness(std::span<const Value> w);

// One left-to-right pass of greedy provisional acceptance. The returned
// witness has maximal length among up-first k-alternating subsequences.
AltWitness greedy_k_alternating(std::span<const Value> w, Value k);

// Length-only variant of greedy_k_alternating without allocation; used on
// the hot paths of enumeration and Monte Carlo.
std::size_t greedy_k_length(std::span<const Value> w, Value k);
std::size_t greedy_x_length(std::span<const double> y, double x);

// Per-element outcome of the x-greedy with bookkeeping exposed.
enum class Acceptance : std::uint8_t {
  kRejected,   // ignored, or rejected before anything was accepted
  kInitial,    // first provisional value
  kAfterDown,  // accepted or replaced the provisional value by going down
  kAfterUp,    // accepted or replaced the provisional value by going up
};

struct XGreedyTrace {
  AltWitness witness;
  std::vector<Acceptance> steps;        // one per input element
  std::vector<std::size_t> provisional; // indices ever provisionally accepted
};

// Greedy provisional acceptance with a real threshold. With
// reject_high_start, leading values above 1 - x are rejected instead of
// being provisionally accepted; the final witness is unchanged.
XGreedyTrace greedy_x_trace(std::span<const double> y, double x,
                            bool reject_high_start);
AltWitness greedy_x_alternating(std::span<const double> y, double x,
                                bool reject_high_start = false);

// O(n^2) dynamic program over (end index, next required direction).
std::size_t dp_longest_k_alternating(std::span<const Value> w, Value k,
                                     Direction first = Direction::kUp);
std::size_t dp_longest_x_alternating(std::span<const double> y, double x,
                                     Direction first = Direction::kUp);

inline constexpr std::size_t kSubsetOracleCap = 20;

// Tests every subsequence against the predicate. Throws
// OracleCapacityError for inputs longer than kSubsetOracleCap.
std::size_t subset_oracle(std::span<const Value> w, Value k,
                          Direction first = Direction::kUp);
std::size_t subset_oracle(std::span<const double> y, double x,
                          Direction first = Direction::kUp);

}  // namespace altseq
