#pragma once

#include <cstdint>

namespace fsmooth {

// SplitMix64 run as a counter-based generator. A (seed, stream) pair is hashed
// into a stream key and draw i is the SplitMix64 finalizer applied to
// key + i*gamma, so streams are independent and any draw is random-access.
// Normal variates use the Marsaglia polar transform with one cached spare.
// The layout (key derivation, uniform mapping, polar transform) is fixed;
// sequences are bit-reproducible across platforms.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1), 53-bit resolution.
  double next_uniform() noexcept;
  double next_uniform(double lo, double hi) noexcept;
  // Standard normal via the polar method.
  double next_normal() noexcept;
  // Unbiased draw from {0, ..., bound-1}; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fsmooth
