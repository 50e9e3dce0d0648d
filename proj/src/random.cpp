#include "altseq/random.hpp"

namespace altseq {

namespace {

std::mt19937_64 make_engine(const SeedSpec& seed, std::uint64_t chunk) {
  const auto lo = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(v & 0xffffffffu);
  };
  const auto hi = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(v >> 32);
  };
  std::seed_seq seq{lo(seed.master_seed),  hi(seed.master_seed),
                    lo(seed.stream_index), hi(seed.stream_index),
                    lo(chunk),             hi(chunk)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(const SeedSpec& seed, std::uint64_t chunk)
    : engine_(make_engine(seed, chunk)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  unsigned __int128 m =
      static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace altseq
