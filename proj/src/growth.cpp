#include "ergo/growth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ergo/errors.hpp"
#include "ergo/exact_sum.hpp"

namespace ergo {

namespace {

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and > 0");
}

void require_positive(std::span<const double> xs, Exec exec) {
  const auto bad = exec == Exec::serial ? kernels::serial::first_nonpositive(xs)
                                        : kernels::omp::first_nonpositive(xs);
  if (bad)
    throw DomainError("income at index " + std::to_string(*bad) + " is not positive (" +
                      std::to_string(xs[*bad]) + ")");
}

}  // namespace

// Means are taken as m + sum(x - m) / n around the sample minimum m, so a
// constant sample returns its value exactly and the result stays
// independent of the order of the data.
double arithmetic_mean(std::span<const double> xs, Exec exec) {
  if (xs.empty()) throw InvalidArgument("empty income sample");
  const double m = *std::ranges::min_element(xs);
  const double s = exec == Exec::serial ? kernels::serial::sum(xs, m) : kernels::omp::sum(xs, m);
  return m + s / static_cast<double>(xs.size());
}

double mean_log(std::span<const double> xs, Exec exec) {
  if (xs.empty()) throw InvalidArgument("empty income sample");
  require_positive(xs, exec);
  const double m = std::log(*std::ranges::min_element(xs));
  const double s =
      exec == Exec::serial ? kernels::serial::sum_log(xs, m) : kernels::omp::sum_log(xs, m);
  return m + s / static_cast<double>(xs.size());
}

DistributionSummary summarize(std::span<const double> xs, Exec exec) {
  DistributionSummary s;
  s.n = xs.size();
  s.mean_log = mean_log(xs, exec);
  s.mean = arithmetic_mean(xs, exec);
  const double terms = exec == Exec::serial ? kernels::serial::sum_gap_terms(xs, s.mean_log)
                                            : kernels::omp::sum_gap_terms(xs, s.mean_log);
  s.gap = std::log1p(terms / static_cast<double>(xs.size()));
  return s;
}

double gdp_per_capita(std::span<const double> xs, Exec exec) { return arithmetic_mean(xs, exec); }

double ddp_per_capita(std::span<const double> xs, Exec exec) {
  return std::exp(mean_log(xs, exec));
}

double ensemble_average_growth_rate(std::span<const double> initial,
                                    std::span<const double> terminal, double dt, Exec exec) {
  require_dt(dt);
  return (std::log(arithmetic_mean(terminal, exec)) - std::log(arithmetic_mean(initial, exec))) / dt;
}

double time_average_growth_rate(std::span<const double> initial,
                                std::span<const double> terminal, double dt, Exec exec) {
  require_dt(dt);
  return (mean_log(terminal, exec) - mean_log(initial, exec)) / dt;
}

double ergodicity_gap(std::span<const double> xs, Exec exec) { return summarize(xs, exec).gap; }

IndividualGrowth individual_growth_rates(std::span<const double> initial,
                                         std::span<const double> terminal, double dt) {
  require_dt(dt);
  if (initial.size() != terminal.size())
    throw InvalidArgument("matched panel required: " + std::to_string(initial.size()) +
                          " initial vs " + std::to_string(terminal.size()) +
                          " terminal incomes");
  if (initial.empty()) throw InvalidArgument("empty income sample");
  require_positive(initial, Exec::serial);
  require_positive(terminal, Exec::serial);

  const double total = exact_sum(initial);
  IndividualGrowth ig;
  ig.rates.resize(initial.size());
  ig.weights.resize(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    ig.rates[i] = (std::log(terminal[i]) - std::log(initial[i])) / dt;
    ig.weights[i] = initial[i] / total;
  }
  return ig;
}

IndividualGrowth individual_growth_rates(const TrajectoryPanel& panel, std::size_t from,
                                         std::size_t to) {
  if (from >= to || to >= panel.times())
    throw InvalidArgument("need from < to < number of panel times");
  return individual_growth_rates(panel.row(from), panel.row(to),
                                 panel.time_grid()[to] - panel.time_grid()[from]);
}

double plutocratic_weighted_average(const IndividualGrowth& ig) {
  if (ig.rates.size() != ig.weights.size() || ig.rates.empty())
    throw InvalidArgument("rates and weights must be non-empty and of equal length");
  ExactSum weight_total;
  ExactSum acc;
  for (std::size_t i = 0; i < ig.rates.size(); ++i) {
    if (!(ig.weights[i] >= 0.0)) throw InvalidArgument("weights must be non-negative");
    weight_total.add(ig.weights[i]);
    acc.add(ig.weights[i] * ig.rates[i]);
  }
  if (std::fabs(weight_total.value() - 1.0) > 1e-12)
    throw InvalidArgument("weights must sum to 1");
  return acc.value();
}

double top_share(std::span<const double> xs, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InvalidArgument("top-share fraction must lie in (0, 1]");
  if (xs.empty()) throw InvalidArgument("empty income sample");
  const auto n = xs.size();
  const double heads = fraction * static_cast<double>(n);
  const double nearest = std::round(heads);
  // 0.1 * 30 lands a hair above 3; treat representation noise as an integer.
  auto k = static_cast<std::size_t>(std::fabs(heads - nearest) <= 1e-9 * std::max(1.0, heads)
                                        ? nearest
                                        : std::ceil(heads));
  k = std::clamp<std::size_t>(k, 1, n);

  std::vector<double> sorted(xs.begin(), xs.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   sorted.end(), std::greater<>());
  const double cutoff = sorted[k - 1];

  ExactSum top;
  std::size_t above = 0;
  for (double x : xs)
    if (x > cutoff) {
      top.add(x);
      ++above;
    }
  top.add(static_cast<double>(k - above) * cutoff);
  return top.value() / exact_sum(xs);
}

GrowthReport growth_report(std::span<const double> initial, std::span<const double> terminal,
                           double dt, Exec exec) {
  require_dt(dt);
  const auto a = summarize(initial, exec);
  const auto b = summarize(terminal, exec);
  GrowthReport r;
  r.dt = dt;
  r.g_plutocratic = (std::log(b.mean) - std::log(a.mean)) / dt;
  r.g_democratic = (b.mean_log - a.mean_log) / dt;
  r.gap_initial = a.gap;
  r.gap_terminal = b.gap;
  r.gdp_pc_initial = a.mean;
  r.gdp_pc_terminal = b.mean;
  r.ddp_pc_initial = std::exp(a.mean_log);
  r.ddp_pc_terminal = std::exp(b.mean_log);
  r.top10_initial = top_share(initial, 0.1);
  r.top10_terminal = top_share(terminal, 0.1);
  return r;
}

GrowthReport growth_report(const IncomeCrossSection& initial, const IncomeCrossSection& terminal,
                           Exec exec) {
  return growth_report(initial.incomes(), terminal.incomes(), terminal.time() - initial.time(),
                       exec);
}

}  // namespace ergo
