#include "ergo/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergo/errors.hpp"
#include "ergo/finite_n.hpp"
#include "ergo/gbm.hpp"
#include "ergo/io.hpp"
#include "ergo/quantile.hpp"

namespace ergo::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct SimulateOpts {
  double mu = 0.05;
  double sigma = 0.2;
  std::size_t n = 200;
  double years = 50.0;
  double dt = 1.0;
  std::optional<std::uint64_t> seed;
  std::string scheme = "exact";
  std::string init = "degenerate";
  double x0 = 1e4;
  double meanlog = 9.210340371976184;
  double sdlog = 0.7;
  std::string out;
  std::string summary;
  std::string format;
};

struct EstimateOpts {
  std::string input;
  double truncate = 0.10;
  std::string basis = "average";
  std::optional<int> anchor_year;
  std::string out;
  std::string format;
};

struct FiniteNOpts {
  std::string preset = "desk";
  std::string statistic = "plutocratic";
  std::optional<double> mu;
  std::optional<double> dt;
  std::optional<std::size_t> reps;
  std::vector<double> sigma_axis;
  std::vector<std::size_t> n_axis;
  std::optional<double> meanlog;
  std::optional<double> sdlog;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
};

struct SweepOpts {
  std::string input;
  int first = 1;
  int last = 100;
  std::string out;
  std::string format;
};

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

std::string fmt(double x) { return format_double(x); }

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    if constexpr (std::is_floating_point_v<T>)
      os << fmt(v[i]);
    else
      os << v[i];
  }
  return os.str();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  err << "no --seed given; using seed " << s << '\n';
  return s;
}

Format resolve_format(const std::string& flag, const std::string& path) {
  return flag.empty() ? format_from_path(path) : parse_format(flag);
}

// Writes via a buffer so a failed run never leaves a partial file behind.
template <class Emit>
void write_output(const std::string& path, std::ostream& stdout_sink, Emit emit) {
  std::ostringstream buf;
  emit(buf);
  if (path == "-") {
    stdout_sink << buf.str();
    stdout_sink.flush();
    if (!stdout_sink) throw IoError("write to standard output failed");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << buf.str();
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

void add_format_flag(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target,
                  "Output format: csv or json (default: json for *.json paths, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void run_simulate(const SimulateOpts& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(o.seed, err);
  const GbmParams params{o.mu, o.sigma};
  const auto grid = uniform_time_grid(o.years, o.dt);
  InitialDistribution init = Degenerate{o.x0};
  if (o.init == "lognormal") init = Lognormal{o.meanlog, o.sdlog};
  RandomSource rng(seed);
  const auto panel = simulate_trajectories(params, o.n, grid, rng,
                                           o.scheme == "euler" ? Scheme::euler : Scheme::exact,
                                           init);

  RunInfo info{{"tool", std::string("ergo ") + kVersion},
               {"command", "simulate"},
               {"seed", std::to_string(seed)},
               {"mu", fmt(o.mu)},
               {"sigma", fmt(o.sigma)},
               {"n", std::to_string(o.n)},
               {"years", fmt(o.years)},
               {"dt", fmt(o.dt)},
               {"scheme", o.scheme},
               {"init", o.init}};
  if (o.init == "degenerate") {
    info.emplace_back("x0", fmt(o.x0));
  } else {
    info.emplace_back("meanlog", fmt(o.meanlog));
    info.emplace_back("sdlog", fmt(o.sdlog));
  }
  write_output(o.out, out, [&](std::ostream& s) {
    emit_report(panel, resolve_format(o.format, o.out), s, info);
  });
  if (!o.summary.empty()) {
    const auto rows = summarize_panel(panel);
    write_output(o.summary, out, [&](std::ostream& s) {
      emit_panel_summary(rows, format_from_path(o.summary), s, info);
    });
  }
}

void run_estimate(const EstimateOpts& o, std::ostream& out) {
  const auto tables = load_quantile_csv_file(o.input);
  const auto report = build_series_report(tables, o.truncate, parse_basis(o.basis), o.anchor_year);
  const RunInfo info{{"tool", std::string("ergo ") + kVersion},
                     {"command", "estimate"},
                     {"input", o.input},
                     {"truncate", fmt(o.truncate)},
                     {"basis", o.basis},
                     {"anchor_year", std::to_string(report.anchor_year)}};
  write_output(o.out, out, [&](std::ostream& s) {
    emit_report(report, resolve_format(o.format, o.out), s, info);
  });
}

void run_finite_n(const FiniteNOpts& o, std::ostream& out, std::ostream& err) {
  LabConfig cfg = o.preset == "full" ? full_preset() : desk_preset();
  if (o.mu) cfg.mu = *o.mu;
  if (o.dt) cfg.dt = *o.dt;
  if (o.reps) cfg.reps = *o.reps;
  if (!o.sigma_axis.empty()) cfg.sigma_axis = o.sigma_axis;
  if (!o.n_axis.empty()) cfg.n_axis = o.n_axis;
  if (o.meanlog) cfg.initial.meanlog = *o.meanlog;
  if (o.sdlog) cfg.initial.sdlog = *o.sdlog;
  cfg.validate();

  const auto stat = parse_lab_statistic(o.statistic);
  std::uint64_t seed = 0;
  SweepGrid grid;
  if (stat == LabStatistic::democratic_exact) {
    grid = democratic_closeness_grid(cfg);
  } else {
    seed = resolve_seed(o.seed, err);
    RandomSource rng(seed);
    grid = stat == LabStatistic::plutocratic_mc ? plutocratic_closeness_fraction(cfg, rng)
                                                : democratic_closeness_fraction_mc(cfg, rng);
  }
  // The grid itself records statistic, mu, dt, reps, seed and the initial distribution.
  const RunInfo info{{"tool", std::string("ergo ") + kVersion},
                     {"command", "finite-n"},
                     {"preset", o.preset}};
  write_output(o.out, out, [&](std::ostream& s) {
    emit_report(grid, resolve_format(o.format, o.out), s, info);
  });
}

void run_sweep(const SweepOpts& o, std::ostream& out) {
  const auto tables = load_quantile_csv_file(o.input);
  const auto result = truncation_sweep(tables, o.first, o.last);
  const RunInfo info{{"tool", std::string("ergo ") + kVersion},
                     {"command", "truncation-sweep"},
                     {"input", o.input},
                     {"first", std::to_string(o.first)},
                     {"last", std::to_string(o.last)}};
  write_output(o.out, out, [&](std::ostream& s) {
    emit_report(result, resolve_format(o.format, o.out), s, info);
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two growth rates of an economy: GBM simulation, ensemble- vs time-average growth, "
               "ergodicity gap (mean log deviation), quantile-data estimation."};
  app.name("ergo");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SimulateOpts sim;
  auto* s = app.add_subcommand("simulate", "Simulate GBM income trajectories");
  s->add_option("--mu", sim.mu, "Drift mu [1/year]")->capture_default_str();
  s->add_option("--sigma", sim.sigma, "Volatility sigma [1/sqrt(year)]")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  s->add_option("--n", sim.n, "Number of individuals")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_option("--years", sim.years, "Simulated horizon [years]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_option("--dt", sim.dt, "Time step between output rows [years]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed, "RNG seed (64-bit); generated and reported when omitted");
  s->add_option("--scheme", sim.scheme, "Stepping scheme: exact or euler")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "euler"}));
  s->add_option("--init", sim.init, "Initial distribution: degenerate or lognormal")
      ->capture_default_str()
      ->check(CLI::IsMember({"degenerate", "lognormal"}));
  s->add_option("--x0", sim.x0, "Initial income for --init degenerate [currency/year]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_option("--meanlog", sim.meanlog, "Mean of ln(income) for --init lognormal")
      ->capture_default_str();
  s->add_option("--sdlog", sim.sdlog, "Std. dev. of ln(income) for --init lognormal")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  s->add_option("--out", sim.out, "Trajectory panel output path ('-' for stdout)")->required();
  s->add_option("--summary", sim.summary,
                "Optional per-time summary (GDP p.c., DDP p.c., gap, top-10% share) output path");
  add_format_flag(s, sim.format);

  EstimateOpts est;
  auto* e = app.add_subcommand("estimate", "Growth rates and gap from a quantile CSV series");
  e->add_option("--input", est.input, "Quantile CSV (year,quantile,average,lower,upper[,concept][,population])")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--truncate", est.truncate,
                "Bottom fraction of quantiles to exclude, in [0,1) (0.10 drops the bottom decile)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.999999));
  e->add_option("--basis", est.basis, "Quantile statistic for DDP: average, lower or upper")
      ->capture_default_str()
      ->check(CLI::IsMember({"average", "lower", "upper"}));
  e->add_option("--anchor-year", est.anchor_year,
                "Year at which GDP/DDP indices equal 100 (default: first year)");
  e->add_option("--out", est.out, "Series report output path ('-' for stdout)")->required();
  add_format_flag(e, est.format);

  FiniteNOpts fin;
  auto* f = app.add_subcommand("finite-n", "Finite-population closeness study over a (sigma, N) grid");
  f->add_option("--preset", fin.preset,
                "Grid preset: desk (N <= 1e5, 1e3 reps) or full (N <= 1e7, 1e4 reps)")
      ->capture_default_str()
      ->check(CLI::IsMember({"desk", "full"}));
  f->add_option("--statistic", fin.statistic,
                "plutocratic (MC fraction of g_<>N > mu - sigma^2/4), democratic (closed-form "
                "probability of bar g_N < mu - sigma^2/4) or democratic-mc (MC fraction)")
      ->capture_default_str()
      ->check(CLI::IsMember({"plutocratic", "democratic", "democratic-mc"}));
  f->add_option("--mu", fin.mu, "Drift mu [1/year] (preset: 0.02)");
  f->add_option("--dt", fin.dt, "Step length [years] (preset: 1)")->check(CLI::PositiveNumber);
  f->add_option("--reps", fin.reps, "Repetitions per cell (preset value)")
      ->check(CLI::PositiveNumber);
  f->add_option("--sigma-axis", fin.sigma_axis,
                "Comma-separated volatilities [1/sqrt(year)], strictly increasing (preset value)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  f->add_option("--n-axis", fin.n_axis,
                "Comma-separated population sizes, strictly increasing (preset value)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  f->add_option("--meanlog", fin.meanlog, "Initial lognormal mean of ln(income) (default ln 1e4)");
  f->add_option("--sdlog", fin.sdlog, "Initial lognormal std. dev. of ln(income) (default 0.7)")
      ->check(CLI::NonNegativeNumber);
  f->add_option("--seed", fin.seed, "RNG seed (64-bit); generated and reported when omitted");
  f->add_option("--out", fin.out, "Grid output path ('-' for stdout)")->required();
  add_format_flag(f, fin.format);

  SweepOpts sw;
  auto* t = app.add_subcommand("truncation-sweep",
                               "Cumulative GDP and DDP p.c. growth versus truncation percentile");
  t->add_option("--input", sw.input, "Percentile CSV (Q = 100 in every year)")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--first", sw.first, "Lowest truncation percentile")
      ->capture_default_str()
      ->check(CLI::Range(1, 100));
  t->add_option("--last", sw.last, "Highest truncation percentile")
      ->capture_default_str()
      ->check(CLI::Range(1, 100));
  t->add_option("--out", sw.out, "Sweep output path ('-' for stdout)")->required();
  add_format_flag(t, sw.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return 2;
  }

  if (f->parsed()) {
    if (!strictly_increasing(fin.sigma_axis)) {
      err << "--sigma-axis: values must be strictly increasing\n";
      return 2;
    }
    if (!strictly_increasing(fin.n_axis)) {
      err << "--n-axis: values must be strictly increasing\n";
      return 2;
    }
  }
  if (t->parsed() && sw.first > sw.last) {
    err << "--first must not exceed --last\n";
    return 2;
  }

  try {
    if (s->parsed()) run_simulate(sim, out, err);
    if (e->parsed()) run_estimate(est, out);
    if (f->parsed()) run_finite_n(fin, out, err);
    if (t->parsed()) run_sweep(sw, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ergo::cli
