#include <cmath>

#include "ergo/exact_sum.hpp"
#include "ergo/kernels.hpp"

namespace ergo::kernels::serial {

void sample_lognormal(std::span<double> out, double meanlog, double sdlog,
                      const RandomSource& rng, std::uint64_t step) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::exp(meanlog + sdlog * rng.normal(i, step));
}

void exact_step(std::span<double> x, double drift, double diffusion, const RandomSource& rng,
                std::uint64_t step) {
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] *= std::exp(drift + diffusion * rng.normal(i, step));
}

std::optional<EulerFailure> euler_step(std::span<double> x, double drift, double diffusion,
                                       const RandomSource& rng, std::uint64_t step) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = rng.normal(i, step);
    const double m = 1.0 + drift + diffusion * z;
    if (!(m > 0.0)) return EulerFailure{i, z, m};
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] *= 1.0 + drift + diffusion * rng.normal(i, step);
  return std::nullopt;
}

double sum(std::span<const double> x, double shift) {
  ExactSum acc;
  for (double v : x) {
    acc.add(v);
    if (shift != 0.0) acc.add(-shift);
  }
  return acc.value();
}

double sum_log(std::span<const double> x, double shift) {
  ExactSum acc;
  for (double v : x) {
    acc.add(std::log(v));
    if (shift != 0.0) acc.add(-shift);
  }
  return acc.value();
}

double sum_gap_terms(std::span<const double> x, double mean_log) {
  ExactSum acc;
  for (double v : x) {
    const double d = std::log(v) - mean_log;
    acc.add(std::expm1(d) - d);
  }
  return acc.value();
}

std::optional<std::size_t> first_nonpositive(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0)) return i;
  return std::nullopt;
}

}  // namespace ergo::kernels::serial
