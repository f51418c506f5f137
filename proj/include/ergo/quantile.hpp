#pragma once

// Estimation from quantile-grouped income data (e.g. percentile tables).
//
// Each quantile is treated as an equal share of the population, so the
// mean log-income is approximated by the unweighted mean over quantiles of
// the log of a per-quantile statistic (the "basis"): the quantile average,
// or its lower or upper threshold for crude bounds.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergo/gbm.hpp"

namespace ergo {

struct QuantileRow {
  int rank = 0;  ///< 1-based position in the original, untruncated table
  double average = 0.0;
  double lower = 0.0;
  std::optional<double> upper;  ///< unbounded for the top quantile in real data

  bool operator==(const QuantileRow&) const = default;
};

struct QuantileTable {
  int year = 0;
  std::vector<QuantileRow> rows;  ///< ascending income order
  std::optional<double> population;
  std::string income_concept;  ///< opaque income-concept label carried from the input

  std::size_t size() const noexcept { return rows.size(); }

  /// Q >= 1, lower <= average <= upper, thresholds non-decreasing, averages > 0.
  /// Throws InvalidArgument naming the year and rank.
  void validate() const;

  bool operator==(const QuantileTable&) const = default;
};

enum class Basis { average, lower, upper };

const char* to_string(Basis b) noexcept;
Basis parse_basis(const std::string& s);

/// Per-quantile values for a basis, with the two documented substitutions:
/// a missing top upper threshold becomes the top average, and a zero bottom
/// lower threshold becomes a tenth of the smallest positive lower threshold.
struct BasisValues {
  std::vector<double> values;
  bool top_upper_substituted = false;
  bool bottom_lower_substituted = false;
};

BasisValues basis_values(const QuantileTable& q, Basis basis);

struct QuantileGrowthEstimate {
  double rate = 0.0;
  bool top_upper_substituted = false;
  bool bottom_lower_substituted = false;
};

/// ((1/Q) sum_q ln b1_q - (1/Q) sum_q ln b0_q) / dt.
QuantileGrowthEstimate time_average_growth_from_quantiles(const QuantileTable& q0,
                                                          const QuantileTable& q1, double dt,
                                                          Basis basis = Basis::average);

/// ln(mean b_q) - mean ln b_q. Within-quantile dispersion is ignored, so for
/// equal-mass groups this never exceeds the ungrouped value.
double ergodicity_gap_from_quantiles(const QuantileTable& q, Basis basis = Basis::average);

/// Drops the lowest fraction * Q quantiles. fraction * Q must be an integer.
QuantileTable truncate_bottom(const QuantileTable& q, double fraction);

/// Drops the floor(fraction * N) lowest incomes; survivors keep their order.
std::vector<double> truncate_bottom(std::span<const double> xs, double fraction);
IncomeCrossSection truncate_bottom(const IncomeCrossSection& xs, double fraction);

struct TruncationPoint {
  int percentile = 0;       ///< lowest percentile kept
  double gdp_growth = 0.0;  ///< terminal / initial mean income
  double ddp_growth = 0.0;  ///< terminal / initial geometric mean income

  bool operator==(const TruncationPoint&) const = default;
};

struct TruncationSweepResult {
  int first_year = 0;
  int last_year = 0;
  std::vector<TruncationPoint> points;

  bool operator==(const TruncationSweepResult&) const = default;
};

/// Cumulative first-to-last growth of GDP and DDP per capita computed on
/// percentiles >= p, for p = first..last. Every table must have Q = 100.
/// Both growths are formed as exp(difference of log levels), so at p = 100
/// they are bit-identical.
TruncationSweepResult truncation_sweep(std::span<const QuantileTable> series, int first = 1,
                                       int last = 100);

/// Groups a population into Q equal-mass quantiles by rank: average, lowest
/// member as lower threshold, the next quantile's lower threshold as upper
/// threshold (none for the top). N must be a multiple of Q.
QuantileTable group_by_quantile(std::span<const double> xs, std::size_t quantiles, int year);

}  // namespace ergo
