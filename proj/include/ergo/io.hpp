#pragma once

// File formats: quantile-table CSV ingestion, and CSV/JSON emission of every
// report type. Decimals are written with 17 significant digits so a load
// recovers the exact doubles.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergo/finite_n.hpp"
#include "ergo/gbm.hpp"
#include "ergo/growth.hpp"
#include "ergo/quantile.hpp"

namespace ergo {

/// Column names of the quantile CSV. `upper` may be empty on the top
/// quantile only; `concept` and `population` are optional columns.
inline constexpr const char* kQuantileColumns[] = {"year", "quantile", "average", "lower",
                                                   "upper"};

/// Parses and validates a quantile CSV. Tables come back sorted by year,
/// rows by quantile, so the row order in the file does not matter. Lines
/// starting with '#' are comments. Throws ParseError carrying the line.
std::vector<QuantileTable> load_quantile_csv(std::istream& in);
std::vector<QuantileTable> load_quantile_csv_file(const std::string& path);

void write_quantile_csv(std::span<const QuantileTable> tables, std::ostream& out);

struct SeriesYear {
  int year = 0;
  double gdp_pc = 0.0;
  double ddp_pc = 0.0;
  double gdp_index = 0.0;  ///< 100 at the anchor year
  double ddp_index = 0.0;
  double gap = 0.0;
  double top10_share = 0.0;

  bool operator==(const SeriesYear&) const = default;
};

struct SeriesPair {
  int from_year = 0;
  int to_year = 0;
  double g_plutocratic = 0.0;
  double g_democratic = 0.0;

  bool operator==(const SeriesPair&) const = default;
};

struct SeriesReport {
  double truncation_fraction = 0.0;
  Basis basis = Basis::average;
  int anchor_year = 0;
  std::string income_concept;
  bool top_upper_substituted = false;
  bool bottom_lower_substituted = false;
  std::vector<SeriesYear> years;
  std::vector<SeriesPair> pairs;

  bool operator==(const SeriesReport&) const = default;
};

/// Per-year levels and per-adjacent-pair growth rates after dropping the
/// bottom `truncation_fraction` of each table. GDP per capita is the mean of
/// quantile averages; DDP per capita and the democratic rate use `basis`;
/// the gap and top-10% share use quantile averages. Level indices are 100
/// at `anchor_year` (default: first year).
SeriesReport build_series_report(std::span<const QuantileTable> tables,
                                 double truncation_fraction = 0.0, Basis basis = Basis::average,
                                 std::optional<int> anchor_year = std::nullopt);

enum class Format { csv, json };

Format parse_format(const std::string& s);
/// "json" for *.json paths, otherwise "csv".
Format format_from_path(const std::string& path);

/// Run metadata written ahead of the data: "# key: value" comment lines in
/// CSV, a "config" object in JSON.
using RunInfo = std::vector<std::pair<std::string, std::string>>;

void emit_report(const SeriesReport& r, Format f, std::ostream& out, const RunInfo& info = {});
void emit_report(const SweepGrid& g, Format f, std::ostream& out, const RunInfo& info = {});
void emit_report(const GrowthReport& r, Format f, std::ostream& out, const RunInfo& info = {});
void emit_report(const TruncationSweepResult& r, Format f, std::ostream& out,
                 const RunInfo& info = {});
void emit_report(const TrajectoryPanel& p, Format f, std::ostream& out, const RunInfo& info = {});

SeriesReport load_series_report_json(std::istream& in);
SweepGrid load_sweep_grid_json(std::istream& in);
GrowthReport load_growth_report_json(std::istream& in);
TruncationSweepResult load_truncation_sweep_json(std::istream& in);

/// Mean, geometric mean, gap and top-10% share at every time of a panel.
struct PanelSummaryRow {
  double time = 0.0;
  double gdp_pc = 0.0;
  double ddp_pc = 0.0;
  double gap = 0.0;
  double top10_share = 0.0;
};

std::vector<PanelSummaryRow> summarize_panel(const TrajectoryPanel& p);
void emit_panel_summary(std::span<const PanelSummaryRow> rows, Format f, std::ostream& out,
                        const RunInfo& info = {});

/// 17 significant digits; throws on NaN or infinity.
std::string format_double(double x);

}  // namespace ergo
