#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: `serial` is the reference implementation, `omp` the OpenMP
// version. Elementwise kernels are bit-identical between the two; the
// reductions go through ExactSum so they are bit-identical as well,
// whatever the thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "ergo/random.hpp"

namespace ergo {

enum class Exec { serial, parallel };

namespace kernels {

struct EulerFailure {
  std::size_t index;
  double draw;
  double multiplier;
};

namespace serial {
// out[i] = exp(meanlog + sdlog * z(i, step))
void sample_lognormal(std::span<double> out, double meanlog, double sdlog,
                      const RandomSource& rng, std::uint64_t step);
// x[i] *= exp(drift + diffusion * z(i, step))
void exact_step(std::span<double> x, double drift, double diffusion, const RandomSource& rng,
                std::uint64_t step);
// x[i] *= 1 + drift + diffusion * z(i, step). On failure x is untouched and
// the lowest offending index is reported.
std::optional<EulerFailure> euler_step(std::span<double> x, double drift, double diffusion,
                                       const RandomSource& rng, std::uint64_t step);
// Correctly rounded sum of x[i] - shift (resp. ln x[i] - shift); the
// subtraction happens inside the exact accumulator, not per term.
double sum(std::span<const double> x, double shift = 0.0);
double sum_log(std::span<const double> x, double shift = 0.0);
// Sum of expm1(d) - d with d = ln x[i] - mean_log. Every term is >= 0.
double sum_gap_terms(std::span<const double> x, double mean_log);
std::optional<std::size_t> first_nonpositive(std::span<const double> x);
}  // namespace serial

// Same contracts as the serial reference.
namespace omp {
void sample_lognormal(std::span<double> out, double meanlog, double sdlog,
                      const RandomSource& rng, std::uint64_t step);
void exact_step(std::span<double> x, double drift, double diffusion, const RandomSource& rng,
                std::uint64_t step);
std::optional<EulerFailure> euler_step(std::span<double> x, double drift, double diffusion,
                                       const RandomSource& rng, std::uint64_t step);
double sum(std::span<const double> x, double shift = 0.0);
double sum_log(std::span<const double> x, double shift = 0.0);
double sum_gap_terms(std::span<const double> x, double mean_log);
std::optional<std::size_t> first_nonpositive(std::span<const double> x);
}  // namespace omp

/// Block length of the parallel reductions. Fixed so the work split does
/// not depend on the thread count.
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 13;

}  // namespace kernels
}  // namespace ergo
