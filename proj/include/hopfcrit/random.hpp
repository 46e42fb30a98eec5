#pragma once

// Deterministic random source.  mt19937_64 has a standard-pinned output
// sequence, and uniform/normal variates are derived from the raw 64-bit
// stream by fixed arithmetic (no std::*_distribution, whose mapping is
// implementation-defined), so identical seeds give identical runs on any
// platform.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hopfcrit {

/// splitmix64 step; used to derive independent child seeds from a base
/// seed plus a stream index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; safe as a log argument.
  double uniform01_open() { return 1.0 - uniform01(); }

  /// Standard normal via Box-Muller (cosine branch only, two draws each).
  double normal() {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hopfcrit
