// Reproducible random streams.
//
// Every draw in a run is a function of (master_seed, stream_index, chunk):
// the three 64-bit words are split into 32-bit halves, fed through
// std::seed_seq, and used to seed a std::mt19937_64. Chunks are fixed-size
// slices of the sample index range, so results do not depend on how many
// worker threads process them.
#pragma once

#include <cstdint>
#include <random>

namespace altseq {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

class Rng {
 public:
  explicit Rng(const SeedSpec& seed, std::uint64_t chunk = 0);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  // rejection, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Seed drawn from std::random_device for --entropy runs.
std::uint64_t entropy_seed();

}  // namespace altseq
