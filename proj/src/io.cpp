#include "ergo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ergo/errors.hpp"
#include "json.hpp"

namespace ergo {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// ---------------------------------------------------------------- CSV input

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty()) throw ParseError(line_no, "stray quote inside unquoted field");
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_decimal(const std::string& s, std::size_t line, const char* column) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v, std::chars_format::general);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError(line, std::string("column '") + column + "': '" + s + "' is not a number");
  return v;
}

int parse_integer(const std::string& s, std::size_t line, const char* column) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw ParseError(line, std::string("column '") + column + "': '" + s + "' is not an integer");
  return v;
}

struct ParsedRow {
  std::size_t line;
  QuantileRow row;
  std::string income_concept;
  std::optional<double> population;
};

// ---------------------------------------------------------------- JSON output

void write_json_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (const unsigned char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\r': os << "\\r"; break;
      case '\t': os << "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

// nlohmann's dump() uses shortest round-trip digits; this writer keeps the
// documented 17 significant digits.
void write_json(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_json_string(os, it.key());
        os << ": ";
        write_json(os, it.value(), depth + 1);
      }
      os << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (j.empty()) {
        os << "[]";
      } else if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], depth + 1);
        }
        os << ']';
      } else {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ",\n";
          os << pad;
          write_json(os, j[i], depth + 1);
        }
        os << '\n' << close_pad << ']';
      }
      return;
    }
    case Json::value_t::string: write_json_string(os, j.get<std::string>()); return;
    case Json::value_t::boolean: os << (j.get<bool>() ? "true" : "false"); return;
    case Json::value_t::number_integer: os << j.get<std::int64_t>(); return;
    case Json::value_t::number_unsigned: os << j.get<std::uint64_t>(); return;
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    case Json::value_t::null: os << "null"; return;
    default: throw InvalidArgument("unsupported JSON value");
  }
}

void finish(std::ostream& out) {
  out.flush();
  if (!out) throw IoError("write to output failed");
}

void emit_json(const Json& body, const RunInfo& info, std::ostream& out) {
  Json doc;
  if (!info.empty()) {
    Json cfg = Json::object();
    for (const auto& [k, v] : info) cfg[k] = v;
    doc["config"] = cfg;
  }
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  write_json(out, doc, 0);
  out << '\n';
  finish(out);
}

void emit_csv_header(const RunInfo& info, std::ostream& out) {
  for (const auto& [k, v] : info) out << "# " << k << ": " << v << '\n';
}

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto json_field(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed report: ") + e.what());
  }
}

template <class Fn>
auto with_year(int year, Fn&& fn) -> decltype(fn()) {
  const auto prefix = "year " + std::to_string(year) + ": ";
  try {
    return fn();
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(prefix + e.what());
  }
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

// ---------------------------------------------------------------- quantile CSV

std::vector<QuantileTable> load_quantile_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    header = split_csv_line(line, line_no);
    break;
  }
  if (header.empty()) throw ParseError(0, "no header line");
  for (auto& h : header) h = trim(h);

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& h = header[i];
    const bool known = std::find(std::begin(kQuantileColumns), std::end(kQuantileColumns), h) !=
                           std::end(kQuantileColumns) ||
                       h == "concept" || h == "population";
    if (!known) throw ParseError(line_no, "unknown column '" + h + "'");
    if (!col.emplace(h, i).second) throw ParseError(line_no, "duplicate column '" + h + "'");
  }
  for (const char* required : kQuantileColumns)
    if (!col.count(required))
      throw ParseError(line_no, std::string("missing column '") + required + "'");

  std::map<int, std::vector<ParsedRow>> by_year;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line, line_no);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(fields.size()));
    for (auto& f : fields) f = trim(f);

    ParsedRow p;
    p.line = line_no;
    const int year = parse_integer(fields[col["year"]], line_no, "year");
    p.row.rank = parse_integer(fields[col["quantile"]], line_no, "quantile");
    if (p.row.rank < 1) throw ParseError(line_no, "quantile must be >= 1");
    p.row.average = parse_decimal(fields[col["average"]], line_no, "average");
    if (!(p.row.average > 0.0)) throw ParseError(line_no, "average must be positive");
    p.row.lower = parse_decimal(fields[col["lower"]], line_no, "lower");
    if (p.row.lower < 0.0) throw ParseError(line_no, "lower threshold must be non-negative");
    if (const auto& u = fields[col["upper"]]; !u.empty()) {
      p.row.upper = parse_decimal(u, line_no, "upper");
      if (!(*p.row.upper > 0.0)) throw ParseError(line_no, "upper threshold must be positive");
    }
    if (col.count("concept")) p.income_concept = fields[col["concept"]];
    if (col.count("population") && !fields[col["population"]].empty()) {
      p.population = parse_decimal(fields[col["population"]], line_no, "population");
      if (!(*p.population > 0.0)) throw ParseError(line_no, "population must be positive");
    }
    by_year[year].push_back(std::move(p));
  }
  if (by_year.empty()) throw ParseError(line_no, "no data rows");

  std::vector<QuantileTable> tables;
  for (auto& [year, rows] : by_year) {
    std::sort(rows.begin(), rows.end(),
              [](const ParsedRow& a, const ParsedRow& b) { return a.row.rank < b.row.rank; });
    QuantileTable t;
    t.year = year;
    const auto y = "year " + std::to_string(year);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& p = rows[i];
      const int expected = static_cast<int>(i) + 1;
      if (p.row.rank != expected) {
        if (p.row.rank < expected)
          throw ParseError(p.line, y + ": quantile " + std::to_string(p.row.rank) + " repeated");
        throw ParseError(p.line, y + ": quantile " + std::to_string(expected) + " missing");
      }
      if (i == 0) {
        t.income_concept = p.income_concept;
        t.population = p.population;
      } else {
        if (p.income_concept != t.income_concept)
          throw ParseError(p.line, y + ": conflicting concept labels");
        if (p.population != t.population)
          throw ParseError(p.line, y + ": conflicting population totals");
      }
      const auto& r = p.row;
      const auto q = ", quantile " + std::to_string(r.rank);
      if (r.lower > r.average) throw ParseError(p.line, y + q + ": lower threshold above average");
      if (r.upper && *r.upper < r.average)
        throw ParseError(p.line, y + q + ": upper threshold below average");
      if (!r.upper && i + 1 != rows.size())
        throw ParseError(p.line, y + q + ": upper threshold may only be empty on the top quantile");
      if (i > 0) {
        const auto& prev = rows[i - 1].row;
        if (r.lower < prev.lower) throw ParseError(p.line, y + q + ": lower thresholds decrease");
        if (r.upper && prev.upper && *r.upper < *prev.upper)
          throw ParseError(p.line, y + q + ": upper thresholds decrease");
      }
      t.rows.push_back(r);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<QuantileTable> load_quantile_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_quantile_csv(in);
}

void write_quantile_csv(std::span<const QuantileTable> tables, std::ostream& out) {
  if (tables.empty()) throw InvalidArgument("no quantile tables to write");
  const bool with_population =
      std::any_of(tables.begin(), tables.end(), [](const auto& t) { return t.population.has_value(); });
  out << "year,quantile,average,lower,upper,concept";
  if (with_population) out << ",population";
  out << '\n';
  for (const auto& t : tables) {
    std::string label = t.income_concept;
    if (label.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : label) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      label = quoted + '"';
    }
    for (const auto& r : t.rows) {
      out << t.year << ',' << r.rank << ',' << format_double(r.average) << ','
          << format_double(r.lower) << ',' << (r.upper ? format_double(*r.upper) : "") << ','
          << label;
      if (with_population) out << ',' << (t.population ? format_double(*t.population) : "");
      out << '\n';
    }
  }
  finish(out);
}

// ---------------------------------------------------------------- series

SeriesReport build_series_report(std::span<const QuantileTable> tables,
                                 double truncation_fraction, Basis basis,
                                 std::optional<int> anchor_year) {
  if (tables.size() < 2) throw InvalidArgument("a series report needs at least two years");
  for (std::size_t i = 1; i < tables.size(); ++i)
    if (!(tables[i].year > tables[i - 1].year))
      throw InvalidArgument("tables must be in strictly increasing year order");

  SeriesReport rep;
  rep.truncation_fraction = truncation_fraction;
  rep.basis = basis;
  rep.income_concept = tables.front().income_concept;
  rep.anchor_year = anchor_year.value_or(tables.front().year);

  std::vector<QuantileTable> kept;
  std::vector<double> log_gdp;
  for (const auto& table : tables) {
    if (table.income_concept != rep.income_concept)
      throw InvalidArgument("year " + std::to_string(table.year) + ": concept '" + table.income_concept +
                            "' differs from '" + rep.income_concept + "'");
    with_year(table.year, [&] {
      table.validate();
      auto t = truncate_bottom(table, truncation_fraction);
      const auto avg = basis_values(t, Basis::average).values;
      const auto b = basis_values(t, basis);
      rep.top_upper_substituted |= b.top_upper_substituted;
      rep.bottom_lower_substituted |= b.bottom_lower_substituted;

      SeriesYear y;
      y.year = t.year;
      y.gdp_pc = gdp_per_capita(avg, Exec::serial);
      y.ddp_pc = std::exp(mean_log(b.values, Exec::serial));
      y.gap = ergodicity_gap_from_quantiles(t, Basis::average);
      y.top10_share = top_share(avg, 0.1);
      rep.years.push_back(y);
      log_gdp.push_back(std::log(y.gdp_pc));
      kept.push_back(std::move(t));
    });
  }

  for (std::size_t i = 1; i < kept.size(); ++i) {
    SeriesPair p;
    p.from_year = kept[i - 1].year;
    p.to_year = kept[i].year;
    const double dt = p.to_year - p.from_year;
    p.g_plutocratic = (log_gdp[i] - log_gdp[i - 1]) / dt;
    p.g_democratic = with_year(p.to_year, [&] {
      return time_average_growth_from_quantiles(kept[i - 1], kept[i], dt, basis).rate;
    });
    rep.pairs.push_back(p);
  }

  const auto anchor = std::find_if(rep.years.begin(), rep.years.end(),
                                   [&](const SeriesYear& y) { return y.year == rep.anchor_year; });
  if (anchor == rep.years.end())
    throw InvalidArgument("anchor year " + std::to_string(rep.anchor_year) + " not in the series");
  const double gdp0 = anchor->gdp_pc;
  const double ddp0 = anchor->ddp_pc;
  for (auto& y : rep.years) {
    y.gdp_index = 100.0 * y.gdp_pc / gdp0;
    y.ddp_index = 100.0 * y.ddp_pc / ddp0;
  }
  return rep;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw InvalidArgument("unknown format '" + s + "' (expected csv or json)");
}

Format format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return Format::json;
  return Format::csv;
}

// ---------------------------------------------------------------- emitters

void emit_report(const SeriesReport& r, Format f, std::ostream& out, const RunInfo& info) {
  if (r.years.empty()) throw InvalidArgument("series report is empty");
  if (r.pairs.size() + 1 != r.years.size())
    throw InvalidArgument("series report needs one pair per adjacent pair of years");
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    body << "# truncation_fraction: " << format_double(r.truncation_fraction) << '\n'
         << "# basis: " << to_string(r.basis) << '\n'
         << "# anchor_year: " << r.anchor_year << '\n'
         << "# concept: " << r.income_concept << '\n'
         << "# top_upper_substituted: " << bool_str(r.top_upper_substituted) << '\n'
         << "# bottom_lower_substituted: " << bool_str(r.bottom_lower_substituted) << '\n'
         << "year,gdp_pc,ddp_pc,gdp_index,ddp_index,ergodicity_gap,top10_share,"
            "g_plutocratic,g_democratic\n";
    for (std::size_t i = 0; i < r.years.size(); ++i) {
      const auto& y = r.years[i];
      body << y.year << ',' << format_double(y.gdp_pc) << ',' << format_double(y.ddp_pc) << ','
           << format_double(y.gdp_index) << ',' << format_double(y.ddp_index) << ','
           << format_double(y.gap) << ',' << format_double(y.top10_share) << ',';
      if (i > 0)
        body << format_double(r.pairs[i - 1].g_plutocratic) << ','
             << format_double(r.pairs[i - 1].g_democratic);
      else
        body << ',';
      body << '\n';
    }
    out << body.str();
    finish(out);
    return;
  }
  Json j;
  j["truncation_fraction"] = r.truncation_fraction;
  j["basis"] = to_string(r.basis);
  j["anchor_year"] = r.anchor_year;
  j["concept"] = r.income_concept;
  j["top_upper_substituted"] = r.top_upper_substituted;
  j["bottom_lower_substituted"] = r.bottom_lower_substituted;
  Json years = Json::array();
  for (const auto& y : r.years)
    years.push_back(Json{{"year", y.year},
                         {"gdp_pc", y.gdp_pc},
                         {"ddp_pc", y.ddp_pc},
                         {"gdp_index", y.gdp_index},
                         {"ddp_index", y.ddp_index},
                         {"ergodicity_gap", y.gap},
                         {"top10_share", y.top10_share}});
  j["years"] = years;
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back(Json{{"from_year", p.from_year},
                         {"to_year", p.to_year},
                         {"g_plutocratic", p.g_plutocratic},
                         {"g_democratic", p.g_democratic}});
  j["pairs"] = pairs;
  emit_json(j, info, out);
}

void emit_report(const SweepGrid& g, Format f, std::ostream& out, const RunInfo& info) {
  if (g.values.empty() || g.values.size() != g.sigma_axis.size() * g.n_axis.size())
    throw InvalidArgument("sweep grid is empty or inconsistent with its axes");
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    body << "# statistic: " << to_string(g.statistic) << '\n'
         << "# mu: " << format_double(g.mu) << '\n'
         << "# dt: " << format_double(g.dt) << '\n'
         << "# reps: " << g.reps << '\n'
         << "# seed: " << g.seed << '\n'
         << "# initial_meanlog: " << format_double(g.initial.meanlog) << '\n'
         << "# initial_sdlog: " << format_double(g.initial.sdlog) << '\n'
         << "sigma,n,value\n";
    for (std::size_t is = 0; is < g.sigma_axis.size(); ++is)
      for (std::size_t in = 0; in < g.n_axis.size(); ++in)
        body << format_double(g.sigma_axis[is]) << ',' << g.n_axis[in] << ','
             << format_double(g.at(is, in)) << '\n';
    out << body.str();
    finish(out);
    return;
  }
  Json j;
  j["statistic"] = to_string(g.statistic);
  j["mu"] = g.mu;
  j["dt"] = g.dt;
  j["reps"] = g.reps;
  j["seed"] = g.seed;
  j["initial_meanlog"] = g.initial.meanlog;
  j["initial_sdlog"] = g.initial.sdlog;
  j["sigma_axis"] = g.sigma_axis;
  j["n_axis"] = g.n_axis;
  Json cells = Json::array();
  for (std::size_t is = 0; is < g.sigma_axis.size(); ++is)
    for (std::size_t in = 0; in < g.n_axis.size(); ++in)
      cells.push_back(Json{{"sigma", g.sigma_axis[is]}, {"n", g.n_axis[in]}, {"value", g.at(is, in)}});
  j["cells"] = cells;
  emit_json(j, info, out);
}

void emit_report(const GrowthReport& r, Format f, std::ostream& out, const RunInfo& info) {
  const std::pair<const char*, double> fields[] = {
      {"dt", r.dt},
      {"g_plutocratic", r.g_plutocratic},
      {"g_democratic", r.g_democratic},
      {"gap_initial", r.gap_initial},
      {"gap_terminal", r.gap_terminal},
      {"gdp_pc_initial", r.gdp_pc_initial},
      {"gdp_pc_terminal", r.gdp_pc_terminal},
      {"ddp_pc_initial", r.ddp_pc_initial},
      {"ddp_pc_terminal", r.ddp_pc_terminal},
      {"top10_initial", r.top10_initial},
      {"top10_terminal", r.top10_terminal}};
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    std::string names, values;
    for (const auto& [name, v] : fields) {
      names += names.empty() ? "" : ",";
      names += name;
      values += values.empty() ? "" : ",";
      values += format_double(v);
    }
    body << names << '\n' << values << '\n';
    out << body.str();
    finish(out);
    return;
  }
  Json j;
  for (const auto& [name, v] : fields) j[name] = v;
  emit_json(j, info, out);
}

void emit_report(const TruncationSweepResult& r, Format f, std::ostream& out,
                 const RunInfo& info) {
  if (r.points.empty()) throw InvalidArgument("truncation sweep is empty");
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    body << "# first_year: " << r.first_year << '\n'
         << "# last_year: " << r.last_year << '\n'
         << "percentile,gdp_growth,ddp_growth\n";
    for (const auto& p : r.points)
      body << p.percentile << ',' << format_double(p.gdp_growth) << ','
           << format_double(p.ddp_growth) << '\n';
    out << body.str();
    finish(out);
    return;
  }
  Json j;
  j["first_year"] = r.first_year;
  j["last_year"] = r.last_year;
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back(Json{{"percentile", p.percentile},
                       {"gdp_growth", p.gdp_growth},
                       {"ddp_growth", p.ddp_growth}});
  j["points"] = pts;
  emit_json(j, info, out);
}

void emit_report(const TrajectoryPanel& p, Format f, std::ostream& out, const RunInfo& info) {
  if (p.times() == 0 || p.individuals() == 0) throw InvalidArgument("trajectory panel is empty");
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    body << "time,individual,income\n";
    for (std::size_t k = 0; k < p.times(); ++k) {
      const auto t = format_double(p.time_grid()[k]);
      const auto row = p.row(k);
      for (std::size_t i = 0; i < row.size(); ++i)
        body << t << ',' << i << ',' << format_double(row[i]) << '\n';
    }
    out << body.str();
    finish(out);
    return;
  }
  Json j;
  j["time_grid"] = p.time_grid();
  Json rows = Json::array();
  for (std::size_t k = 0; k < p.times(); ++k) {
    const auto row = p.row(k);
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  j["incomes"] = rows;
  emit_json(j, info, out);
}

std::vector<PanelSummaryRow> summarize_panel(const TrajectoryPanel& p) {
  std::vector<PanelSummaryRow> rows;
  for (std::size_t k = 0; k < p.times(); ++k) {
    const auto s = summarize(p.row(k));
    rows.push_back({p.time_grid()[k], s.mean, std::exp(s.mean_log), s.gap, top_share(p.row(k), 0.1)});
  }
  return rows;
}

void emit_panel_summary(std::span<const PanelSummaryRow> rows, Format f, std::ostream& out,
                        const RunInfo& info) {
  if (rows.empty()) throw InvalidArgument("panel summary is empty");
  if (f == Format::csv) {
    std::ostringstream body;
    emit_csv_header(info, body);
    body << "time,gdp_pc,ddp_pc,ergodicity_gap,top10_share\n";
    for (const auto& r : rows)
      body << format_double(r.time) << ',' << format_double(r.gdp_pc) << ','
           << format_double(r.ddp_pc) << ',' << format_double(r.gap) << ','
           << format_double(r.top10_share) << '\n';
    out << body.str();
    finish(out);
    return;
  }
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"time", r.time},
                       {"gdp_pc", r.gdp_pc},
                       {"ddp_pc", r.ddp_pc},
                       {"ergodicity_gap", r.gap},
                       {"top10_share", r.top10_share}});
  Json j;
  j["summary"] = arr;
  emit_json(j, info, out);
}

// ---------------------------------------------------------------- loaders

SeriesReport load_series_report_json(std::istream& in) {
  const auto j = parse_json(in);
  return json_field([&] {
    SeriesReport r;
    r.truncation_fraction = j.at("truncation_fraction").get<double>();
    r.basis = parse_basis(j.at("basis").get<std::string>());
    r.anchor_year = j.at("anchor_year").get<int>();
    r.income_concept = j.at("concept").get<std::string>();
    r.top_upper_substituted = j.at("top_upper_substituted").get<bool>();
    r.bottom_lower_substituted = j.at("bottom_lower_substituted").get<bool>();
    for (const auto& y : j.at("years"))
      r.years.push_back({y.at("year").get<int>(), y.at("gdp_pc").get<double>(),
                         y.at("ddp_pc").get<double>(), y.at("gdp_index").get<double>(),
                         y.at("ddp_index").get<double>(), y.at("ergodicity_gap").get<double>(),
                         y.at("top10_share").get<double>()});
    for (const auto& p : j.at("pairs"))
      r.pairs.push_back({p.at("from_year").get<int>(), p.at("to_year").get<int>(),
                         p.at("g_plutocratic").get<double>(), p.at("g_democratic").get<double>()});
    return r;
  });
}

SweepGrid load_sweep_grid_json(std::istream& in) {
  const auto j = parse_json(in);
  return json_field([&] {
    SweepGrid g;
    g.statistic = parse_lab_statistic(j.at("statistic").get<std::string>());
    g.mu = j.at("mu").get<double>();
    g.dt = j.at("dt").get<double>();
    g.reps = j.at("reps").get<std::size_t>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.initial.meanlog = j.at("initial_meanlog").get<double>();
    g.initial.sdlog = j.at("initial_sdlog").get<double>();
    g.sigma_axis = j.at("sigma_axis").get<std::vector<double>>();
    g.n_axis = j.at("n_axis").get<std::vector<std::size_t>>();
    for (const auto& c : j.at("cells")) g.values.push_back(c.at("value").get<double>());
    if (g.values.size() != g.sigma_axis.size() * g.n_axis.size())
      throw ParseError(0, "cell count does not match the axes");
    return g;
  });
}

GrowthReport load_growth_report_json(std::istream& in) {
  const auto j = parse_json(in);
  return json_field([&] {
    GrowthReport r;
    r.dt = j.at("dt").get<double>();
    r.g_plutocratic = j.at("g_plutocratic").get<double>();
    r.g_democratic = j.at("g_democratic").get<double>();
    r.gap_initial = j.at("gap_initial").get<double>();
    r.gap_terminal = j.at("gap_terminal").get<double>();
    r.gdp_pc_initial = j.at("gdp_pc_initial").get<double>();
    r.gdp_pc_terminal = j.at("gdp_pc_terminal").get<double>();
    r.ddp_pc_initial = j.at("ddp_pc_initial").get<double>();
    r.ddp_pc_terminal = j.at("ddp_pc_terminal").get<double>();
    r.top10_initial = j.at("top10_initial").get<double>();
    r.top10_terminal = j.at("top10_terminal").get<double>();
    return r;
  });
}

TruncationSweepResult load_truncation_sweep_json(std::istream& in) {
  const auto j = parse_json(in);
  return json_field([&] {
    TruncationSweepResult r;
    r.first_year = j.at("first_year").get<int>();
    r.last_year = j.at("last_year").get<int>();
    for (const auto& p : j.at("points"))
      r.points.push_back({p.at("percentile").get<int>(), p.at("gdp_growth").get<double>(),
                          p.at("ddp_growth").get<double>()});
    return r;
  });
}

}  // namespace ergo
