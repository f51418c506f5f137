#pragma once

// Finite-population Monte Carlo study: how often do the finite-N growth
// rates of a GBM population land nearer their own infinite-N limit than the
// other one? The midpoint between mu and mu - sigma^2/2 is mu - sigma^2/4.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ergo/gbm.hpp"
#include "ergo/random.hpp"

namespace ergo {

struct LabConfig {
  double mu = 0.02;
  double dt = 1.0;
  std::vector<double> sigma_axis;
  std::vector<std::size_t> n_axis;
  std::size_t reps = 1000;
  /// Starting distribution of every run. Median income 1e4/year, sdlog 0.7.
  Lognormal initial{9.210340371976184, 0.7};

  void validate() const;
};

/// sigma^2 in {0, .01, .02, .04, .06, .09}, N in {2, 10, ..., 1e5}, 1e3 reps.
LabConfig desk_preset();
/// sigma^2 in {0, .01, ..., .09}, N in {2, 10, ..., 1e7}, 1e4 reps.
LabConfig full_preset();

enum class LabStatistic { plutocratic_mc, democratic_mc, democratic_exact };

const char* to_string(LabStatistic s) noexcept;
LabStatistic parse_lab_statistic(const std::string& s);

/// Values over the (sigma, N) grid, sigma-major.
struct SweepGrid {
  LabStatistic statistic = LabStatistic::plutocratic_mc;
  std::vector<double> sigma_axis;
  std::vector<std::size_t> n_axis;
  std::size_t reps = 0;
  double mu = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  Lognormal initial;
  std::vector<double> values;

  double at(std::size_t i_sigma, std::size_t i_n) const {
    return values.at(i_sigma * n_axis.size() + i_n);
  }

  bool operator==(const SweepGrid&) const = default;
};

/// Finite-N growth rates from `reps` independent one-step runs of N incomes.
struct GrowthSample {
  std::vector<double> plutocratic;  ///< g_<>N of each run
  std::vector<double> democratic;   ///< bar g_N of each run
};

GrowthSample sample_growth_rates(double mu, double sigma, std::size_t n, std::size_t reps,
                                 double dt, const Lognormal& initial, const RandomSource& rng,
                                 Exec exec = Exec::parallel);

/// Fraction of runs with g_<>N > mu - sigma^2/4. With sigma = 0 the rate is
/// mu itself and the cell is 1.
SweepGrid plutocratic_closeness_fraction(const LabConfig& cfg, RandomSource& rng,
                                         Exec exec = Exec::parallel);

/// Fraction of runs with bar g_N < mu - sigma^2/4. With sigma = 0 the rate is
/// exactly mu and the strict inequality never holds, so the cell is 0.
SweepGrid democratic_closeness_fraction_mc(const LabConfig& cfg, RandomSource& rng,
                                           Exec exec = Exec::parallel);

/// P(bar g_N < mu - sigma^2/4) = 1/2 + 1/2 erf(sqrt(sigma^2 N dt / 32)).
double democratic_closeness_probability(double sigma, std::size_t n, double dt);

/// The closed form above over the grid (no sampling; seed recorded as 0).
SweepGrid democratic_closeness_grid(const LabConfig& cfg);

}  // namespace ergo
