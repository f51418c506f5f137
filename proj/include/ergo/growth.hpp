#pragma once

// Growth rates of an income distribution.
//
// Ensemble-average (plutocratic, GDP-per-capita) growth follows the
// arithmetic mean income; time-average (democratic, DDP-per-capita) growth
// follows the mean log-income, i.e. the geometric mean. Their difference
// is the rate of change of the ergodicity gap, ln<x> - <ln x>, better
// known as the mean logarithmic deviation.
//
// All sums are exact (see ExactSum), so every statistic here is invariant
// under relabelling of individuals, bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "ergo/gbm.hpp"
#include "ergo/kernels.hpp"

namespace ergo {

/// Level statistics of one cross-section, computed in a single validation pass.
struct DistributionSummary {
  std::size_t n = 0;
  double mean = 0.0;      ///< arithmetic mean (GDP per capita)
  double mean_log = 0.0;  ///< <ln x>; exp of it is DDP per capita
  double gap = 0.0;       ///< ergodicity gap / MLD, always >= 0
};

double arithmetic_mean(std::span<const double> xs, Exec exec = Exec::parallel);
/// <ln x>; DomainError on a non-positive value.
double mean_log(std::span<const double> xs, Exec exec = Exec::parallel);

/// Throws InvalidArgument on empty input and DomainError on a non-positive income.
DistributionSummary summarize(std::span<const double> xs, Exec exec = Exec::parallel);

double gdp_per_capita(std::span<const double> xs, Exec exec = Exec::parallel);

/// Geometric mean income.
double ddp_per_capita(std::span<const double> xs, Exec exec = Exec::parallel);

/// (ln<x(t+dt)> - ln<x(t)>) / dt. The two populations need not match in size.
double ensemble_average_growth_rate(std::span<const double> initial,
                                    std::span<const double> terminal, double dt,
                                    Exec exec = Exec::parallel);

/// (<ln x(t+dt)> - <ln x(t)>) / dt. The two populations need not match in size.
double time_average_growth_rate(std::span<const double> initial,
                                std::span<const double> terminal, double dt,
                                Exec exec = Exec::parallel);

/// ln<x> - <ln x>. Evaluated as log1p(<expm1(d) - d>) with d = ln x - <ln x>,
/// which is non-negative term by term and exactly 0 for equal incomes.
double ergodicity_gap(std::span<const double> xs, Exec exec = Exec::parallel);

/// Per-individual growth rates g_i = (ln x_i(t+dt) - ln x_i(t)) / dt and the
/// initial income shares w_i = x_i(t) / sum x(t).
struct IndividualGrowth {
  std::vector<double> rates;
  std::vector<double> weights;
};

IndividualGrowth individual_growth_rates(std::span<const double> initial,
                                         std::span<const double> terminal, double dt);
IndividualGrowth individual_growth_rates(const TrajectoryPanel& panel, std::size_t from,
                                         std::size_t to);

/// sum_i w_i g_i: first-order approximation of the ensemble-average rate,
/// good only when individual changes are small.
double plutocratic_weighted_average(const IndividualGrowth& ig);

/// Share of total income held by the top ceil(fraction * N) earners.
/// Earners tied at the cutoff income are attributed fractionally so the head
/// count is exact. fraction must lie in (0, 1].
double top_share(std::span<const double> xs, double fraction);

/// Everything measured between two cross-sections dt years apart.
struct GrowthReport {
  double dt = 0.0;
  double g_plutocratic = 0.0;
  double g_democratic = 0.0;
  double gap_initial = 0.0;
  double gap_terminal = 0.0;
  double gdp_pc_initial = 0.0;
  double gdp_pc_terminal = 0.0;
  double ddp_pc_initial = 0.0;
  double ddp_pc_terminal = 0.0;
  double top10_initial = 0.0;
  double top10_terminal = 0.0;

  bool operator==(const GrowthReport&) const = default;
};

GrowthReport growth_report(std::span<const double> initial, std::span<const double> terminal,
                           double dt, Exec exec = Exec::parallel);
GrowthReport growth_report(const IncomeCrossSection& initial, const IncomeCrossSection& terminal,
                           Exec exec = Exec::parallel);

}  // namespace ergo
