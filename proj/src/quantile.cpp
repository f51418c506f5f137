#include "ergo/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ergo/errors.hpp"
#include "ergo/exact_sum.hpp"
#include "ergo/growth.hpp"

namespace ergo {

namespace {

std::string where(const QuantileTable& q, const QuantileRow& r) {
  return "year " + std::to_string(q.year) + ", quantile " + std::to_string(r.rank);
}

struct LogLevels {
  double log_mean;
  double mean_log;
};

// Log of the arithmetic mean and mean of logs of strictly positive values.
// For a single value both equal std::log(value) exactly.
LogLevels log_levels(std::span<const double> v) {
  return {std::log(arithmetic_mean(v, Exec::serial)), mean_log(v, Exec::serial)};
}

void require_positive_basis(const QuantileTable& q, const std::vector<double>& v, Basis b) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0))
      throw DomainError(std::string(to_string(b)) + " basis value is not positive at " +
                        where(q, q.rows[i]));
}

}  // namespace

void QuantileTable::validate() const {
  if (rows.empty()) throw InvalidArgument("year " + std::to_string(year) + ": no quantiles");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!(r.average > 0.0) || !std::isfinite(r.average))
      throw InvalidArgument("non-positive average at " + where(*this, r));
    if (!(r.lower >= 0.0) || !std::isfinite(r.lower))
      throw InvalidArgument("negative lower threshold at " + where(*this, r));
    if (r.lower > r.average)
      throw InvalidArgument("lower threshold above average at " + where(*this, r));
    if (r.upper) {
      if (!(*r.upper > 0.0) || !std::isfinite(*r.upper))
        throw InvalidArgument("non-positive upper threshold at " + where(*this, r));
      if (*r.upper < r.average)
        throw InvalidArgument("upper threshold below average at " + where(*this, r));
    } else if (i + 1 != rows.size()) {
      throw InvalidArgument("missing upper threshold below the top quantile at " +
                            where(*this, r));
    }
    if (i > 0) {
      const auto& p = rows[i - 1];
      if (r.lower < p.lower)
        throw InvalidArgument("lower thresholds decrease at " + where(*this, r));
      if (r.upper && p.upper && *r.upper < *p.upper)
        throw InvalidArgument("upper thresholds decrease at " + where(*this, r));
    }
  }
  if (population && !(*population > 0.0))
    throw InvalidArgument("year " + std::to_string(year) + ": population must be positive");
}

const char* to_string(Basis b) noexcept {
  switch (b) {
    case Basis::average: return "average";
    case Basis::lower: return "lower";
    case Basis::upper: return "upper";
  }
  return "?";
}

Basis parse_basis(const std::string& s) {
  if (s == "average") return Basis::average;
  if (s == "lower") return Basis::lower;
  if (s == "upper") return Basis::upper;
  throw InvalidArgument("unknown basis '" + s + "' (expected average, lower or upper)");
}

BasisValues basis_values(const QuantileTable& q, Basis basis) {
  if (q.rows.empty()) throw InvalidArgument("year " + std::to_string(q.year) + ": no quantiles");
  BasisValues out;
  out.values.reserve(q.size());
  switch (basis) {
    case Basis::average:
      for (const auto& r : q.rows) out.values.push_back(r.average);
      break;
    case Basis::lower: {
      for (const auto& r : q.rows) out.values.push_back(r.lower);
      if (out.values.front() == 0.0) {
        double smallest = std::numeric_limits<double>::infinity();
        for (double v : out.values)
          if (v > 0.0) smallest = std::min(smallest, v);
        if (std::isfinite(smallest)) {
          out.values.front() = 0.1 * smallest;
          out.bottom_lower_substituted = true;
        }
      }
      break;
    }
    case Basis::upper:
      for (const auto& r : q.rows) out.values.push_back(r.upper.value_or(0.0));
      if (!q.rows.back().upper) {
        out.values.back() = q.rows.back().average;
        out.top_upper_substituted = true;
      }
      break;
  }
  require_positive_basis(q, out.values, basis);
  return out;
}

QuantileGrowthEstimate time_average_growth_from_quantiles(const QuantileTable& q0,
                                                          const QuantileTable& q1, double dt,
                                                          Basis basis) {
  if (q0.size() != q1.size())
    throw InvalidArgument("quantile count differs: year " + std::to_string(q0.year) + " has " +
                          std::to_string(q0.size()) + ", year " + std::to_string(q1.year) +
                          " has " + std::to_string(q1.size()));
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and > 0");
  const auto b0 = basis_values(q0, basis);
  const auto b1 = basis_values(q1, basis);
  QuantileGrowthEstimate e;
  e.rate = (mean_log(b1.values, Exec::serial) - mean_log(b0.values, Exec::serial)) / dt;
  e.top_upper_substituted = b0.top_upper_substituted || b1.top_upper_substituted;
  e.bottom_lower_substituted = b0.bottom_lower_substituted || b1.bottom_lower_substituted;
  return e;
}

double ergodicity_gap_from_quantiles(const QuantileTable& q, Basis basis) {
  return ergodicity_gap(basis_values(q, basis).values, Exec::serial);
}

QuantileTable truncate_bottom(const QuantileTable& q, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw InvalidArgument("truncation fraction must lie in [0, 1)");
  const double drop = fraction * static_cast<double>(q.size());
  const double whole = std::round(drop);
  if (std::fabs(drop - whole) > 1e-9)
    throw InvalidArgument("truncation fraction " + std::to_string(fraction) +
                          " is not a whole number of the " + std::to_string(q.size()) +
                          " quantiles of year " + std::to_string(q.year));
  const auto k = static_cast<std::size_t>(whole);
  QuantileTable out = q;
  out.rows.erase(out.rows.begin(), out.rows.begin() + static_cast<std::ptrdiff_t>(k));
  if (out.population) *out.population *= 1.0 - fraction;
  return out;
}

std::vector<double> truncate_bottom(std::span<const double> xs, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw InvalidArgument("truncation fraction must lie in [0, 1)");
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(xs.size()) + 1e-9));
  if (k == 0) return {xs.begin(), xs.end()};

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<char> dropped(xs.size(), 0);
  for (std::size_t j = 0; j < k; ++j) dropped[order[j]] = 1;

  std::vector<double> out;
  out.reserve(xs.size() - k);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!dropped[i]) out.push_back(xs[i]);
  return out;
}

IncomeCrossSection truncate_bottom(const IncomeCrossSection& xs, double fraction) {
  return IncomeCrossSection(xs.time(), truncate_bottom(xs.incomes(), fraction));
}

TruncationSweepResult truncation_sweep(std::span<const QuantileTable> series, int first,
                                       int last) {
  if (series.size() < 2) throw InvalidArgument("truncation sweep needs at least two periods");
  if (first < 1 || last > 100 || first > last)
    throw InvalidArgument("truncation range must satisfy 1 <= first <= last <= 100");
  for (const auto& t : series)
    if (t.size() != 100)
      throw InvalidArgument("truncation sweep needs percentiles (Q = 100); year " +
                            std::to_string(t.year) + " has Q = " + std::to_string(t.size()));

  const auto& a = series.front();
  const auto& b = series.back();
  const auto avg0 = basis_values(a, Basis::average).values;
  const auto avg1 = basis_values(b, Basis::average).values;

  TruncationSweepResult out;
  out.first_year = a.year;
  out.last_year = b.year;
  out.points.resize(static_cast<std::size_t>(last - first + 1));
  const auto count = static_cast<std::int64_t>(out.points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < count; ++j) {
    const int p = first + static_cast<int>(j);
    const auto skip = static_cast<std::size_t>(p - 1);
    const auto l0 = log_levels(std::span<const double>(avg0).subspan(skip));
    const auto l1 = log_levels(std::span<const double>(avg1).subspan(skip));
    out.points[static_cast<std::size_t>(j)] = {p, std::exp(l1.log_mean - l0.log_mean),
                                               std::exp(l1.mean_log - l0.mean_log)};
  }
  return out;
}

QuantileTable group_by_quantile(std::span<const double> xs, std::size_t quantiles, int year) {
  if (quantiles == 0 || xs.size() % quantiles != 0)
    throw InvalidArgument("population of " + std::to_string(xs.size()) +
                          " does not split into " + std::to_string(quantiles) +
                          " equal quantiles");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t per = sorted.size() / quantiles;

  QuantileTable t;
  t.year = year;
  t.population = static_cast<double>(sorted.size());
  t.rows.resize(quantiles);
  for (std::size_t q = 0; q < quantiles; ++q) {
    const auto group = std::span<const double>(sorted).subspan(q * per, per);
    auto& r = t.rows[q];
    r.rank = static_cast<int>(q + 1);
    r.average = arithmetic_mean(group, Exec::serial);
    r.lower = group.front();
    if (q + 1 < quantiles) r.upper = sorted[(q + 1) * per];
    // The rounded mean of tied values can land one ulp outside the group.
    r.average = std::clamp(r.average, group.front(), group.back());
  }
  return t;
}

}  // namespace ergo
