#include "altseq/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>
#include <unordered_set>

namespace altseq {

namespace {

// True if a -> b is a step in direction `d` of size at least `threshold`.
template <typename T>
inline bool is_step(T a, T b, Direction d, T threshold) {
  return d == Direction::kUp ? (b - a >= threshold) : (a - b >= threshold);
}

template <typename T>
bool is_alternating(std::span<const T> w, T threshold, Direction first) {
  Direction d = first;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    if (!is_step(w[j], w[j + 1], d, threshold)) return false;
    d = flip(d);
  }
  return true;
}

// Greedy provisional acceptance. `prov` is the provisional index; `up` is
// true while the next committed step must be an ascent. A value that
// overshoots the provisional one in the wrong direction replaces it, a value
// that clears the threshold in the right direction commits it, anything in
// between is ignored.
template <typename T>
std::size_t greedy_length(std::span<const T> w, T threshold) {
  if (w.empty()) return 0;
  std::size_t length = 1;
  T prov = w[0];
  bool up = true;
  for (std::size_t j = 1; j < w.size(); ++j) {
    const T v = w[j];
    if (up) {
      if (v < prov) {
        prov = v;
      } else if (v - prov >= threshold) {
        prov = v;
        ++length;
        up = false;
      }
    } else {
      if (v > prov) {
        prov = v;
      } else if (prov - v >= threshold) {
        prov = v;
        ++length;
        up = true;
      }
    }
  }
  return length;
}

template <typename T>
XGreedyTrace greedy_trace(std::span<const T> w, T threshold,
                          bool reject_high_start, T high_cut) {
  XGreedyTrace out;
  out.steps.assign(w.size(), Acceptance::kRejected);
  if (w.empty()) return out;

  auto& committed = out.witness.indices;
  bool have = false;
  bool up = true;
  std::size_t prov = 0;
  auto accept = [&](std::size_t j, Acceptance how) {
    out.steps[j] = how;
    out.provisional.push_back(j);
    prov = j;
  };

  for (std::size_t j = 0; j < w.size(); ++j) {
    const T v = w[j];
    if (!have) {
      if (reject_high_start && v > high_cut) continue;
      have = true;
      accept(j, Acceptance::kInitial);
      continue;
    }
    if (up) {
      if (v < w[prov]) {
        accept(j, Acceptance::kAfterDown);
      } else if (v - w[prov] >= threshold) {
        committed.push_back(prov);
        accept(j, Acceptance::kAfterUp);
        up = false;
      }
    } else {
      if (v > w[prov]) {
        accept(j, Acceptance::kAfterUp);
      } else if (w[prov] - v >= threshold) {
        committed.push_back(prov);
        accept(j, Acceptance::kAfterDown);
        up = true;
      }
    }
  }

  if (have) {
    committed.push_back(prov);
  } else {
    // Every value was rejected at the start. The plain greedy would have
    // kept the running minimum as its lone provisional value.
    const auto it = std::min_element(w.begin(), w.end());
    committed.push_back(static_cast<std::size_t>(it - w.begin()));
  }
  return out;
}

template <typename T>
std::size_t dp_longest(std::span<const T> w, T threshold, Direction first) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  // best[j][d]: longest valid subsequence ending at j whose next step must
  // go in direction d (0 = up, 1 = down); 0 means unreachable.
  std::vector<std::array<std::size_t, 2>> best(n, {0, 0});
  const auto slot = [](Direction d) { return d == Direction::kUp ? 0 : 1; };
  std::size_t answer = 1;
  for (std::size_t j = 0; j < n; ++j) {
    best[j][slot(first)] = 1;
    for (std::size_t i = 0; i < j; ++i) {
      for (Direction d : {Direction::kUp, Direction::kDown}) {
        const std::size_t len = best[i][slot(d)];
        if (len == 0 || !is_step(w[i], w[j], d, threshold)) continue;
        auto& target = best[j][slot(flip(d))];
        target = std::max(target, len + 1);
      }
    }
    answer = std::max({answer, best[j][0], best[j][1]});
  }
  return answer;
}

template <typename T>
std::size_t subset_max(std::span<const T> w, T threshold, Direction first) {
  const std::size_t n = w.size();
  if (n > kSubsetOracleCap) {
    throw OracleCapacityError("subset oracle: length " + std::to_string(n) +
                              " exceeds cap " +
                              std::to_string(kSubsetOracleCap));
  }
  std::size_t best = 0;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    bool started = false;
    T prev{};
    Direction d = first;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (!(mask & (std::uint32_t{1} << j))) continue;
      if (started) {
        ok = is_step(prev, w[j], d, threshold);
        d = flip(d);
      }
      prev = w[j];
      started = true;
    }
    if (ok) best = size;
  }
  return best;
}

template <typename T>
std::vector<T> gather(std::span<const T> parent, const AltWitness& w) {
  std::vector<T> out;
  out.reserve(w.indices.size());
  for (std::size_t i : w.indices) out.push_back(parent[i]);
  return out;
}

}  // namespace

const char* to_string(Direction d) {
  return d == Direction::kUp ? "up" : "down";
}

Permutation psi(std::span<const double> y) {
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  Permutation ranks(y.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    ranks[order[r]] = static_cast<Value>(r + 1);
  }
  return ranks;
}

bool has_distinct_values(std::span<const Value> w) {
  std::unordered_set<Value> seen;
  seen.reserve(w.size());
  for (Value v : w) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

bool is_permutation_of_1_to_n(std::span<const Value> w) {
  std::vector<bool> seen(w.size() + 1, false);
  for (Value v : w) {
    if (v < 1 || v > static_cast<Value>(w.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_k_alternating(std::span<const Value> w, Value k, Direction first) {
  return is_alternating<Value>(w, k, first);
}

bool is_x_alternating(std::span<const double> y, double x, Direction first) {
  return is_alternating<double>(y, x, first);
}

IntWord witness_values(std::span<const Value> parent, const AltWitness& w) {
  return gather(parent, w);
}

RealSeq witness_values(std::span<const double> parent, const AltWitness& w) {
  return gather(parent, w);
}

AltWitness peak_valley_witness(std::span<const Value> w) {
  AltWitness out;
  const std::size_t n = w.size();
  if (n == 0) return out;
  if (n >= 2 && w[0] < w[1]) out.indices.push_back(0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool peak = w[i - 1] < w[i] && w[i] > w[i + 1];
    const bool valley = w[i - 1] > w[i] && w[i] < w[i + 1];
    if (peak || valley) out.indices.push_back(i);
  }
  // The final run continues whatever turn came last, so the last index
  // always extends the pattern (or is the lone element of a falling word).
  out.indices.push_back(n - 1);
  return out;
}

std::size_t greedy_k_length(std::span<const Value> w, Value k) {
  return greedy_length<Value>(w, k);
}

std::size_t greedy_x_length(std::span<const double> y, double x) {
  return greedy_length<double>(y, x);
}

AltWitness greedy_k_alternating(std::span<const Value> w, Value k) {
  return greedy_trace<Value>(w, k, false, 0).witness;
}

XGreedyTrace greedy_x_trace(std::span<const double> y, double x,
                            bool reject_high_start) {
  return greedy_trace<double>(y, x, reject_high_start, 1.0 - x);
}

AltWitness greedy_x_alternating(std::span<const double> y, double x,
                                bool reject_high_start) {
  return greedy_x_trace(y, x, reject_high_start).witness;
}

std::size_t dp_longest_k_alternating(std::span<const Value> w, Value k,
                                     Direction first) {
  return dp_longest<Value>(w, k, first);
}

std::size_t dp_longest_x_alternating(std::span<const double> y, double x,
                                     Direction first) {
  return dp_longest<double>(y, x, first);
}

std::size_t subset_oracle(std::span<const Value> w, Value k, Direction first) {
  return subset_max<Value>(w, k, first);
}

std::size_t subset_oracle(std::span<const double> y, double x,
                          Direction first) {
  return subset_max<double>(y, x, first);
}

}  // namespace altseq
