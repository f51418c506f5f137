#include "ergo/finite_n.hpp"

#include <cmath>
#include <string>

#include "ergo/errors.hpp"
#include "ergo/kernels.hpp"

namespace ergo {

namespace {

template <class T>
void require_increasing(const std::vector<T>& axis, const char* name) {
  if (axis.empty()) throw InvalidArgument(std::string(name) + " axis is empty");
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      throw InvalidArgument(std::string(name) + " axis must be strictly increasing");
}

struct RunOutcome {
  double plutocratic;
  double democratic;
};

// Neumaier compensated sum; each run is summed serially in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::fabs(sum_) >= std::fabs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// One population of n incomes: draw x0 from the initial lognormal, take one
// exact step. Each individual uses both normals of one Philox block, the
// first for its starting income, the second for its growth shock. Log
// levels are linear in the draws, so the democratic rate needs no logs.
RunOutcome one_run(double mu, double sigma, std::size_t n, double dt, const Lognormal& initial,
                   const RandomSource& rng) {
  const double drift = (mu - 0.5 * sigma * sigma) * dt;
  const double diffusion = sigma * std::sqrt(dt);
  CompensatedSum x0_sum, x1_sum, shock_sum;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [z_init, z_step] = rng.normal_pair(i, 0);
    const double log_x0 = initial.meanlog + initial.sdlog * z_init;
    const double log_growth = drift + diffusion * z_step;
    x0_sum.add(std::exp(log_x0));
    x1_sum.add(std::exp(log_x0 + log_growth));
    shock_sum.add(z_step);
  }
  const double mean_shock = shock_sum.value() / static_cast<double>(n);
  return {std::log(x1_sum.value() / x0_sum.value()) / dt, (drift + diffusion * mean_shock) / dt};
}

template <class Count>
SweepGrid run_grid(const LabConfig& cfg, RandomSource& rng, Exec exec, LabStatistic stat,
                   Count count) {
  cfg.validate();
  SweepGrid g;
  g.statistic = stat;
  g.sigma_axis = cfg.sigma_axis;
  g.n_axis = cfg.n_axis;
  g.reps = cfg.reps;
  g.mu = cfg.mu;
  g.dt = cfg.dt;
  g.seed = rng.seed();
  g.initial = cfg.initial;
  g.values.resize(cfg.sigma_axis.size() * cfg.n_axis.size());

  const RandomSource base = rng.child(rng.advance());
  for (std::size_t is = 0; is < cfg.sigma_axis.size(); ++is) {
    for (std::size_t in = 0; in < cfg.n_axis.size(); ++in) {
      const std::size_t cell = is * cfg.n_axis.size() + in;
      const double sigma = cfg.sigma_axis[is];
      if (sigma == 0.0) {
        g.values[cell] = count(sigma, GrowthSample{});
        continue;
      }
      const auto sample = sample_growth_rates(cfg.mu, sigma, cfg.n_axis[in], cfg.reps, cfg.dt,
                                              cfg.initial, base.child(cell), exec);
      g.values[cell] = count(sigma, sample);
    }
  }
  return g;
}

}  // namespace

void LabConfig::validate() const {
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and > 0");
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  require_increasing(sigma_axis, "sigma");
  require_increasing(n_axis, "N");
  if (sigma_axis.front() < 0.0 || !std::isfinite(sigma_axis.back()))
    throw InvalidArgument("sigma axis values must be finite and >= 0");
  if (n_axis.front() < 1) throw InvalidArgument("N axis values must be >= 1");
  if (!std::isfinite(initial.meanlog) || !(initial.sdlog >= 0.0) || !std::isfinite(initial.sdlog))
    throw InvalidArgument("initial lognormal needs finite meanlog and sdlog >= 0");
}

LabConfig desk_preset() {
  LabConfig c;
  for (double s2 : {0.0, 0.01, 0.02, 0.04, 0.06, 0.09}) c.sigma_axis.push_back(std::sqrt(s2));
  c.n_axis = {2, 10, 100, 1000, 10000, 100000};
  c.reps = 1000;
  return c;
}

LabConfig full_preset() {
  LabConfig c;
  for (int i = 0; i <= 9; ++i) c.sigma_axis.push_back(std::sqrt(0.01 * i));
  c.n_axis = {2, 10, 100, 1000, 10000, 100000, 1000000, 10000000};
  c.reps = 10000;
  return c;
}

const char* to_string(LabStatistic s) noexcept {
  switch (s) {
    case LabStatistic::plutocratic_mc: return "plutocratic";
    case LabStatistic::democratic_mc: return "democratic-mc";
    case LabStatistic::democratic_exact: return "democratic";
  }
  return "?";
}

LabStatistic parse_lab_statistic(const std::string& s) {
  if (s == "plutocratic") return LabStatistic::plutocratic_mc;
  if (s == "democratic-mc") return LabStatistic::democratic_mc;
  if (s == "democratic") return LabStatistic::democratic_exact;
  throw InvalidArgument("unknown statistic '" + s +
                        "' (expected plutocratic, democratic or democratic-mc)");
}

GrowthSample sample_growth_rates(double mu, double sigma, std::size_t n, std::size_t reps,
                                 double dt, const Lognormal& initial, const RandomSource& rng,
                                 Exec exec) {
  if (n < 1 || reps < 1) throw InvalidArgument("n and reps must be >= 1");
  if (!(sigma >= 0.0) || !(dt > 0.0)) throw InvalidArgument("need sigma >= 0 and dt > 0");
  GrowthSample s;
  s.plutocratic.resize(reps);
  s.democratic.resize(reps);
  const auto count = static_cast<std::int64_t>(reps);
  if (exec == Exec::serial) {
    for (std::int64_t r = 0; r < count; ++r) {
      const auto o = one_run(mu, sigma, n, dt, initial, rng.child(static_cast<std::uint64_t>(r)));
      s.plutocratic[r] = o.plutocratic;
      s.democratic[r] = o.democratic;
    }
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < count; ++r) {
      const auto o = one_run(mu, sigma, n, dt, initial, rng.child(static_cast<std::uint64_t>(r)));
      s.plutocratic[r] = o.plutocratic;
      s.democratic[r] = o.democratic;
    }
  }
  return s;
}

SweepGrid plutocratic_closeness_fraction(const LabConfig& cfg, RandomSource& rng, Exec exec) {
  const double mu = cfg.mu;
  return run_grid(cfg, rng, exec, LabStatistic::plutocratic_mc,
                  [mu](double sigma, const GrowthSample& s) {
                    if (sigma == 0.0) return 1.0;
                    const double threshold = mu - 0.25 * sigma * sigma;
                    std::size_t hits = 0;
                    for (double g : s.plutocratic) hits += g > threshold;
                    return static_cast<double>(hits) / static_cast<double>(s.plutocratic.size());
                  });
}

SweepGrid democratic_closeness_fraction_mc(const LabConfig& cfg, RandomSource& rng, Exec exec) {
  const double mu = cfg.mu;
  return run_grid(cfg, rng, exec, LabStatistic::democratic_mc,
                  [mu](double sigma, const GrowthSample& s) {
                    if (sigma == 0.0) return 0.0;
                    const double threshold = mu - 0.25 * sigma * sigma;
                    std::size_t hits = 0;
                    for (double g : s.democratic) hits += g < threshold;
                    return static_cast<double>(hits) / static_cast<double>(s.democratic.size());
                  });
}

double democratic_closeness_probability(double sigma, std::size_t n, double dt) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be >= 0");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  return 0.5 + 0.5 * std::erf(std::sqrt(sigma * sigma * static_cast<double>(n) * dt / 32.0));
}

SweepGrid democratic_closeness_grid(const LabConfig& cfg) {
  cfg.validate();
  SweepGrid g;
  g.statistic = LabStatistic::democratic_exact;
  g.sigma_axis = cfg.sigma_axis;
  g.n_axis = cfg.n_axis;
  g.reps = cfg.reps;
  g.mu = cfg.mu;
  g.dt = cfg.dt;
  g.initial = cfg.initial;
  for (double sigma : cfg.sigma_axis)
    for (std::size_t n : cfg.n_axis) g.values.push_back(democratic_closeness_probability(sigma, n, cfg.dt));
  return g;
}

}  // namespace ergo
