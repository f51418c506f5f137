#include <cmath>
#include <limits>
#include <vector>

#include "ergo/exact_sum.hpp"
#include "ergo/kernels.hpp"

namespace ergo::kernels::omp {

namespace {

using Index = std::int64_t;

// Blocked exact reduction: each block owns an accumulator, blocks are
// merged in index order. Exactness makes the result independent of both
// the block size and the schedule.
template <class Term>
double blocked_sum(std::size_t n, Term term, double shift = 0.0) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) {
    ExactSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(term(i));
      if (shift != 0.0) acc.add(-shift);
    }
    return acc.value();
  }
  std::vector<ExactSum> partial(blocks);
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < static_cast<Index>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      partial[b].add(term(i));
      if (shift != 0.0) partial[b].add(-shift);
    }
  }
  ExactSum total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace

void sample_lognormal(std::span<double> out, double meanlog, double sdlog,
                      const RandomSource& rng, std::uint64_t step) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    out[i] = std::exp(meanlog + sdlog * rng.normal(static_cast<std::uint64_t>(i), step));
}

void exact_step(std::span<double> x, double drift, double diffusion, const RandomSource& rng,
                std::uint64_t step) {
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    x[i] *= std::exp(drift + diffusion * rng.normal(static_cast<std::uint64_t>(i), step));
}

std::optional<EulerFailure> euler_step(std::span<double> x, double drift, double diffusion,
                                       const RandomSource& rng, std::uint64_t step) {
  const Index n = static_cast<Index>(x.size());
  std::vector<double> multiplier(x.size());
  Index first_bad = std::numeric_limits<Index>::max();
#pragma omp parallel for schedule(static) reduction(min : first_bad)
  for (Index i = 0; i < n; ++i) {
    const double m = 1.0 + drift + diffusion * rng.normal(static_cast<std::uint64_t>(i), step);
    multiplier[i] = m;
    if (!(m > 0.0) && i < first_bad) first_bad = i;
  }
  if (first_bad != std::numeric_limits<Index>::max()) {
    const auto i = static_cast<std::size_t>(first_bad);
    return EulerFailure{i, rng.normal(i, step), multiplier[i]};
  }
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) x[i] *= multiplier[i];
  return std::nullopt;
}

double sum(std::span<const double> x, double shift) {
  return blocked_sum(x.size(), [x](std::size_t i) { return x[i]; }, shift);
}

double sum_log(std::span<const double> x, double shift) {
  return blocked_sum(x.size(), [x](std::size_t i) { return std::log(x[i]); }, shift);
}

double sum_gap_terms(std::span<const double> x, double mean_log) {
  return blocked_sum(x.size(), [x, mean_log](std::size_t i) {
    const double d = std::log(x[i]) - mean_log;
    return std::expm1(d) - d;
  });
}

std::optional<std::size_t> first_nonpositive(std::span<const double> x) {
  const Index n = static_cast<Index>(x.size());
  Index first = std::numeric_limits<Index>::max();
#pragma omp parallel for schedule(static) reduction(min : first)
  for (Index i = 0; i < n; ++i)
    if (!(x[i] > 0.0) && i < first) first = i;
  if (first == std::numeric_limits<Index>::max()) return std::nullopt;
  return static_cast<std::size_t>(first);
}

}  // namespace ergo::kernels::omp
