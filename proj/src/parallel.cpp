#include "altseq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace altseq {

unsigned default_workers() {
  if (const char* env = std::getenv("ALTSEQ_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_chunk(std::uint64_t total, std::uint64_t chunk_size,
                    unsigned workers,
                    const std::function<void(const ChunkRange&)>& body) {
  if (total == 0 || chunk_size == 0) return;
  const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
  const auto threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers, 1, chunks));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= chunks) return;
      const ChunkRange range{i, i * chunk_size,
                             std::min(total, (i + 1) * chunk_size)};
      try {
        body(range);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace altseq
