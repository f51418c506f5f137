#include "ergo/random.hpp"

#include <cmath>
#include <numbers>

namespace ergo {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RandomSource RandomSource::child(std::uint64_t id) const noexcept {
  return RandomSource(mix64(seed_ ^ mix64(id ^ 0x5851F42D4C957F2Dull)));
}

double RandomSource::uniform(std::uint64_t individual, std::uint64_t step) const noexcept {
  const auto r = Philox4x32::generate(
      {static_cast<std::uint32_t>(individual), static_cast<std::uint32_t>(individual >> 32),
       static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32)},
      key());
  return to_unit(r[0], r[1]);
}

double RandomSource::normal(std::uint64_t individual, std::uint64_t step) const noexcept {
  return normal_pair(individual, step).first;
}

std::pair<double, double> RandomSource::normal_pair(std::uint64_t individual,
                                                    std::uint64_t step) const noexcept {
  const auto r = Philox4x32::generate(
      {static_cast<std::uint32_t>(individual), static_cast<std::uint32_t>(individual >> 32),
       static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32)},
      key());
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - to_unit(r[0], r[1]);
  const double u2 = to_unit(r[2], r[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace ergo
