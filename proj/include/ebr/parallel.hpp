#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ebr {

/// Trials per work block. Block b always draws from child stream b of the
/// run's seed, so results do not depend on the thread count.
inline constexpr std::uint64_t kTrialBlock = 1u << 14;

inline std::uint64_t block_count(std::uint64_t trials) {
  return (trials + kTrialBlock - 1) / kTrialBlock;
}

/// Calls fn(block, first_trial, end_trial) for every block, on up to
/// `threads` workers. fn must only write to per-block storage.
template <class Fn>
void for_each_block(std::uint64_t trials, unsigned threads, Fn&& fn) {
  const std::uint64_t blocks = block_count(trials);
  auto run = [&](std::uint64_t b) {
    const std::uint64_t first = b * kTrialBlock;
    fn(b, first, std::min(trials, first + kTrialBlock));
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      run(b);
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
          run(b);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = blocks;
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace ebr
