// Deterministic fan-out over fixed-size chunks of an index range.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace altseq {

struct ChunkRange {
  std::uint64_t index = 0;  // chunk number, also the RNG substream
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

// Worker count from ALTSEQ_WORKERS, else hardware concurrency (>= 1).
unsigned default_workers();

// Calls `body` once per chunk of [0, total), chunk i covering
// [i*chunk_size, min(total, (i+1)*chunk_size)). Chunks are claimed from an
// atomic counter by `workers` threads; the caller merges per-chunk results
// in chunk order, which makes the outcome independent of `workers`.
// The first exception thrown by a body is rethrown on the calling thread.
void for_each_chunk(std::uint64_t total, std::uint64_t chunk_size,
                    unsigned workers,
                    const std::function<void(const ChunkRange&)>& body);

// Convenience wrapper collecting one result per chunk, in chunk order.
template <typename Result, typename Fn>
std::vector<Result> map_chunks(std::uint64_t total, std::uint64_t chunk_size,
                               unsigned workers, Fn&& fn) {
  const std::uint64_t chunks =
      chunk_size == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
  std::vector<Result> results(chunks);
  for_each_chunk(total, chunk_size, workers, [&](const ChunkRange& c) {
    results[c.index] = fn(c);
  });
  return results;
}

}  // namespace altseq
