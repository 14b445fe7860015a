#pragma once

#include <cstdint>
#include <functional>

namespace ncagm {

/// Counter-based generator: output k depends only on (key, k), so any stream
/// can be regenerated at any index independently of execution order. The
/// per-index mix is the splitmix64 finalizer over key + (k+1) * golden-gamma.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream_a = 0, std::uint64_t stream_b = 0);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos();
  /// Standard normal via Box-Muller; two values per transform, one cached.
  double gaussian();
  /// Uniform on [lo, hi).
  double uniform_in(double lo, double hi);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// Runs fn(i) for i in [0, count) across worker threads. The worker count is
/// capped by the NCAGM_THREADS environment variable (default: hardware
/// concurrency, at most 8). Work items must be independent; exceptions are
/// rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

int worker_thread_cap();

}  // namespace ncagm
