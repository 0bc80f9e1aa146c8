#pragma once

#include <cstdint>

namespace vclda {

// Substream seed for Monte Carlo trial `index` under a master seed;
// splitmix64-based so consecutive indices are well separated.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

// xoshiro256++ with splitmix64 seeding.  The algorithm identity is fixed,
// so a given (seed, stream) pair produces the same draws on every platform.
// Substreams for Monte Carlo trials are derived from (seed, stream_index);
// see for_stream().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derives an independent substream, e.g. one per Monte Carlo trial.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via the Marsaglia polar method (second value cached).
  double gaussian();

 private:
  Rng() = default;

  std::uint64_t state_[4] = {0, 0, 0, 0};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vclda
