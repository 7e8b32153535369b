#pragma once

#include <cstdint>
#include <random>

namespace vsgof {

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/// Seed of substream `index` under `parent`. Replicate i of any Monte-Carlo
/// loop draws from derive_seed(seed, i), so results do not depend on which
/// worker runs which replicate.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Seedable random stream. Owned by exactly one worker at a time.
///
/// Only the raw 64-bit engine output is used; every variate transform is
/// implemented here or in distributions.cpp, so streams are reproducible
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11U) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential.
  double exponential() noexcept;

  /// Standard normal (Marsaglia polar method).
  double normal() noexcept;

  /// Gamma with the given shape and unit scale (Marsaglia-Tsang).
  double gamma(double shape) noexcept;

  /// Fair coin.
  bool bit() noexcept { return (engine_() >> 63U) != 0U; }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vsgof
