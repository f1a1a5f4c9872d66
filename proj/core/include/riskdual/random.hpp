#pragma once

#include <cstddef>
#include <cstdint>

namespace riskdual {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/**
 * Counter-based 64-bit generator.
 *
 * Draw i of stream s under seed k is mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
 * with key = mix64(k ^ mix64(s + 0x632BE59BD9B4E019)). Outputs depend only on
 * (seed, stream, counter) so every platform produces the same sequence, and
 * independent streams can be handed to parallel workers.
 */
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept;

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept;

  /// Uniform integer in [lo, hi] (inclusive).
  std::size_t uniform_index(std::size_t lo, std::size_t hi) noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace riskdual
