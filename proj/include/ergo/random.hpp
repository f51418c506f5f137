#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace ergo {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// A pure function of (counter, key): no hidden state, so any draw can be
/// produced independently on any thread.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) noexcept;
};

/// Seeded source of standard normal variates.
///
/// Draws are addressed by (individual, step): the variate for individual `i`
/// at step `s` depends only on the seed, `i` and `s`. `position` counts the
/// steps already consumed, so two sources with the same seed that see the
/// same sequence of calls produce bit-identical draws.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return position_; }

  /// Reserves the next step index.
  std::uint64_t advance() noexcept { return position_++; }

  /// Independent source for sub-stream `id` (a sweep cell, a repetition...).
  RandomSource child(std::uint64_t id) const noexcept;

  /// Standard normal variate for (individual, step), via Box-Muller on
  /// two 53-bit uniforms taken from one Philox block.
  double normal(std::uint64_t individual, std::uint64_t step) const noexcept;

  /// Both Box-Muller outputs of the same block: first equals normal(), the
  /// second is the independent sine branch.
  std::pair<double, double> normal_pair(std::uint64_t individual,
                                        std::uint64_t step) const noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t individual, std::uint64_t step) const noexcept;

 private:
  Philox4x32::Key key() const noexcept {
    return {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  }

  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

/// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace ergo
