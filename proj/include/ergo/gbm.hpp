#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ergo/kernels.hpp"
#include "ergo/random.hpp"

namespace ergo {

/// Drift mu (1/year) and volatility sigma (1/sqrt(year)) of
/// dx = x (mu dt + sigma dW).
struct GbmParams {
  double mu = 0.0;
  double sigma = 0.0;

  void validate() const;
};

/// Incomes of a population at one instant. Every income is > 0 and there
/// is at least one.
class IncomeCrossSection {
 public:
  IncomeCrossSection(double time, std::vector<double> incomes);

  double time() const noexcept { return time_; }
  std::size_t size() const noexcept { return incomes_.size(); }
  std::span<const double> incomes() const noexcept { return incomes_; }
  double operator[](std::size_t i) const { return incomes_[i]; }

  bool operator==(const IncomeCrossSection&) const = default;

 private:
  double time_ = 0.0;
  std::vector<double> incomes_;
};

/// Individual income paths on a common time grid. Row k holds every
/// individual's income at time_grid[k]; column i is individual i.
class TrajectoryPanel {
 public:
  TrajectoryPanel(std::vector<double> time_grid, std::size_t individuals);

  const std::vector<double>& time_grid() const noexcept { return time_grid_; }
  std::size_t individuals() const noexcept { return individuals_; }
  std::size_t times() const noexcept { return time_grid_.size(); }

  std::span<const double> row(std::size_t k) const;
  std::span<double> row(std::size_t k);
  IncomeCrossSection cross_section(std::size_t k) const;
  double at(std::size_t k, std::size_t individual) const { return row(k)[individual]; }

  bool operator==(const TrajectoryPanel&) const = default;

 private:
  std::vector<double> time_grid_;
  std::size_t individuals_;
  std::vector<double> values_;
};

struct Degenerate {
  double x0 = 1e4;
  bool operator==(const Degenerate&) const = default;
};

struct Lognormal {
  double meanlog = 0.0;
  double sdlog = 0.0;
  bool operator==(const Lognormal&) const = default;
};

using InitialDistribution = std::variant<Degenerate, Lognormal>;

enum class Scheme { exact, euler };

/// n incomes at time 0. Consumes one step of `rng` in both cases.
IncomeCrossSection sample_initial_ensemble(const InitialDistribution& dist, std::size_t n,
                                           RandomSource& rng, Exec exec = Exec::parallel);

/// Exact lognormal step: x -> x exp((mu - sigma^2/2) dt + sigma W), W ~ N(0, dt).
IncomeCrossSection gbm_step_exact(const IncomeCrossSection& xs, const GbmParams& p, double dt,
                                  RandomSource& rng, Exec exec = Exec::parallel);

/// Euler-Maruyama step: x -> x (1 + mu dt + sigma sqrt(dt) zeta).
/// Throws StepSizeError if any multiplier is <= 0; nothing is clamped.
IncomeCrossSection gbm_step_euler(const IncomeCrossSection& xs, const GbmParams& p, double dt,
                                  RandomSource& rng, Exec exec = Exec::parallel);

/// Simulates n trajectories over `time_grid` (strictly increasing, starting at 0),
/// one step per grid interval.
TrajectoryPanel simulate_trajectories(const GbmParams& p, std::size_t n,
                                      std::span<const double> time_grid, RandomSource& rng,
                                      Scheme scheme = Scheme::exact,
                                      const InitialDistribution& initial = Degenerate{},
                                      Exec exec = Exec::parallel);

/// 0, dt, 2 dt, ..., years (the last point is `years` itself).
std::vector<double> uniform_time_grid(double years, double dt);

}  // namespace ergo
