#include "ergo/gbm.hpp"

#include <cmath>
#include <string>

#include "ergo/errors.hpp"

namespace ergo {

namespace {

void require_positive_incomes(std::span<const double> xs) {
  if (const auto bad = kernels::serial::first_nonpositive(xs))
    throw DomainError("income " + std::to_string(*bad) + " is not positive (" +
                      std::to_string(xs[*bad]) + ")");
}

void require_finite_time(double t, const char* what) {
  if (!std::isfinite(t)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

void GbmParams::validate() const {
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
  if (!std::isfinite(sigma) || sigma < 0.0)
    throw InvalidArgument("sigma must be finite and >= 0");
}

IncomeCrossSection::IncomeCrossSection(double time, std::vector<double> incomes)
    : time_(time), incomes_(std::move(incomes)) {
  require_finite_time(time_, "time");
  if (incomes_.empty()) throw InvalidArgument("cross-section needs at least one income");
  require_positive_incomes(incomes_);
}

TrajectoryPanel::TrajectoryPanel(std::vector<double> time_grid, std::size_t individuals)
    : time_grid_(std::move(time_grid)),
      individuals_(individuals),
      values_(time_grid_.size() * individuals, 0.0) {}

std::span<const double> TrajectoryPanel::row(std::size_t k) const {
  return std::span<const double>(values_).subspan(k * individuals_, individuals_);
}

std::span<double> TrajectoryPanel::row(std::size_t k) {
  return std::span<double>(values_).subspan(k * individuals_, individuals_);
}

IncomeCrossSection TrajectoryPanel::cross_section(std::size_t k) const {
  const auto r = row(k);
  return IncomeCrossSection(time_grid_.at(k), std::vector<double>(r.begin(), r.end()));
}

IncomeCrossSection sample_initial_ensemble(const InitialDistribution& dist, std::size_t n,
                                           RandomSource& rng, Exec exec) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  const auto step = rng.advance();
  std::vector<double> xs(n);
  if (const auto* d = std::get_if<Degenerate>(&dist)) {
    if (!(d->x0 > 0.0) || !std::isfinite(d->x0))
      throw InvalidArgument("degenerate initial income x0 must be positive and finite");
    xs.assign(n, d->x0);
  } else {
    const auto& ln = std::get<Lognormal>(dist);
    if (!std::isfinite(ln.meanlog)) throw InvalidArgument("meanlog must be finite");
    if (!std::isfinite(ln.sdlog) || ln.sdlog < 0.0)
      throw InvalidArgument("sdlog must be finite and >= 0");
    if (exec == Exec::serial)
      kernels::serial::sample_lognormal(xs, ln.meanlog, ln.sdlog, rng, step);
    else
      kernels::omp::sample_lognormal(xs, ln.meanlog, ln.sdlog, rng, step);
  }
  return IncomeCrossSection(0.0, std::move(xs));
}

IncomeCrossSection gbm_step_exact(const IncomeCrossSection& xs, const GbmParams& p, double dt,
                                  RandomSource& rng, Exec exec) {
  p.validate();
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and >= 0");
  const auto step = rng.advance();
  std::vector<double> next(xs.incomes().begin(), xs.incomes().end());
  const double drift = (p.mu - 0.5 * p.sigma * p.sigma) * dt;
  const double diffusion = p.sigma * std::sqrt(dt);
  if (exec == Exec::serial)
    kernels::serial::exact_step(next, drift, diffusion, rng, step);
  else
    kernels::omp::exact_step(next, drift, diffusion, rng, step);
  return IncomeCrossSection(xs.time() + dt, std::move(next));
}

IncomeCrossSection gbm_step_euler(const IncomeCrossSection& xs, const GbmParams& p, double dt,
                                  RandomSource& rng, Exec exec) {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("Euler dt must be finite and > 0");
  const auto step = rng.advance();
  std::vector<double> next(xs.incomes().begin(), xs.incomes().end());
  const double drift = p.mu * dt;
  const double diffusion = p.sigma * std::sqrt(dt);
  const auto failure = exec == Exec::serial
                           ? kernels::serial::euler_step(next, drift, diffusion, rng, step)
                           : kernels::omp::euler_step(next, drift, diffusion, rng, step);
  if (failure) throw StepSizeError(failure->index, failure->draw, failure->multiplier);
  return IncomeCrossSection(xs.time() + dt, std::move(next));
}

TrajectoryPanel simulate_trajectories(const GbmParams& p, std::size_t n,
                                      std::span<const double> time_grid, RandomSource& rng,
                                      Scheme scheme, const InitialDistribution& initial,
                                      Exec exec) {
  p.validate();
  if (time_grid.empty() || time_grid.front() != 0.0)
    throw InvalidArgument("time grid must start at 0");
  for (std::size_t k = 1; k < time_grid.size(); ++k)
    if (!(time_grid[k] > time_grid[k - 1]) || !std::isfinite(time_grid[k]))
      throw InvalidArgument("time grid must be strictly increasing (index " + std::to_string(k) +
                            ")");

  TrajectoryPanel panel(std::vector<double>(time_grid.begin(), time_grid.end()), n);
  auto current = sample_initial_ensemble(initial, n, rng, exec);
  std::copy(current.incomes().begin(), current.incomes().end(), panel.row(0).begin());
  for (std::size_t k = 1; k < time_grid.size(); ++k) {
    const double dt = time_grid[k] - time_grid[k - 1];
    current = scheme == Scheme::exact ? gbm_step_exact(current, p, dt, rng, exec)
                                      : gbm_step_euler(current, p, dt, rng, exec);
    std::copy(current.incomes().begin(), current.incomes().end(), panel.row(k).begin());
  }
  return panel;
}

std::vector<double> uniform_time_grid(double years, double dt) {
  if (!(years > 0.0) || !(dt > 0.0) || !std::isfinite(years) || !std::isfinite(dt))
    throw InvalidArgument("years and dt must be positive and finite");
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(years / dt - 1e-9)));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) grid[k] = std::min(years, static_cast<double>(k) * dt);
  return grid;
}

}  // namespace ergo
