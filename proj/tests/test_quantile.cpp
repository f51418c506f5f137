#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergo/errors.hpp"
#include "ergo/growth.hpp"
#include "ergo/quantile.hpp"

using namespace ergo;

namespace {

using V = std::vector<double>;

V lognormal(std::mt19937_64& gen, std::size_t n, double meanlog, double sdlog) {
  std::normal_distribution<double> z(meanlog, sdlog);
  V v(n);
  for (auto& x : v) x = std::exp(z(gen));
  return v;
}

// Percentile table with averages a * growth^k style shape and consistent thresholds.
QuantileTable synthetic_percentiles(int year, double scale) {
  QuantileTable t;
  t.year = year;
  for (int q = 1; q <= 100; ++q) {
    QuantileRow r;
    r.rank = q;
    r.lower = scale * (q == 1 ? 0.0 : 100.0 * q);
    r.average = scale * (100.0 * q + 50.0);
    if (q < 100) r.upper = scale * 100.0 * (q + 1);
    t.rows.push_back(r);
  }
  return t;
}

QuantileTable scaled(QuantileTable t, int year, double factor) {
  t.year = year;
  for (auto& r : t.rows) {
    r.average *= factor;
    r.lower *= factor;
    if (r.upper) *r.upper *= factor;
  }
  return t;
}

}  // namespace

TEST_CASE("singleton quantiles reproduce ungrouped statistics exactly") {
  std::mt19937_64 gen(1);
  for (std::size_t n : {1u, 2u, 17u, 1000u}) {
    const V x0 = lognormal(gen, n, 9.0, 1.0);
    const V x1 = lognormal(gen, n, 9.2, 1.1);
    const auto q0 = group_by_quantile(x0, n, 2000);
    const auto q1 = group_by_quantile(x1, n, 2001);
    CHECK(time_average_growth_from_quantiles(q0, q1, 1.0).rate ==
          time_average_growth_rate(x0, x1, 1.0));
    CHECK(ergodicity_gap_from_quantiles(q1) == ergodicity_gap(x1));
  }
}

TEST_CASE("uniform growth is recovered on every basis") {
  const auto q0 = synthetic_percentiles(2000, 1.0);
  for (double dt : {1.0, 5.0}) {
    const auto q1 = scaled(q0, 2000 + static_cast<int>(dt), std::exp(0.02 * dt));
    for (Basis b : {Basis::average, Basis::lower, Basis::upper})
      CHECK(time_average_growth_from_quantiles(q0, q1, dt, b).rate ==
            doctest::Approx(0.02).epsilon(1e-12));
    CHECK(ergodicity_gap_from_quantiles(q1) ==
          doctest::Approx(ergodicity_gap_from_quantiles(q0)).epsilon(1e-12));
  }
}

TEST_CASE("grouped gap values") {
  QuantileTable flat;
  flat.rows = {{1, 5.0, 4.0, 6.0}, {2, 5.0, 5.0, 7.0}, {3, 5.0, 5.0, std::nullopt}};
  CHECK(ergodicity_gap_from_quantiles(flat) == 0.0);

  QuantileTable two;
  two.rows = {{1, 1.0, 0.5, 2.0}, {2, std::exp(1.0), 2.0, std::nullopt}};
  CHECK(ergodicity_gap_from_quantiles(two) ==
        doctest::Approx(0.12011450695827752463176337351).epsilon(1e-14));

  std::mt19937_64 gen(2);
  for (int seed = 0; seed < 10; ++seed) {
    const V x = lognormal(gen, 100'000, 0.0, 0.5);
    CHECK(ergodicity_gap_from_quantiles(group_by_quantile(x, 100, 0)) <= ergodicity_gap(x));
  }
}

TEST_CASE("ungrouped growth lies within the basis bracket when ranks are kept") {
  std::mt19937_64 gen(3);
  for (double a : {0.9, 1.05, 1.2}) {
    V x0 = lognormal(gen, 100'000, 9.0, 0.8);
    V x1 = x0;
    for (auto& x : x1) x = 1.02 * std::pow(x, a);
    const auto q0 = group_by_quantile(x0, 100, 0);
    const auto q1 = group_by_quantile(x1, 100, 1);
    const double truth = time_average_growth_rate(x0, x1, 1.0);
    V est;
    for (Basis b : {Basis::average, Basis::lower, Basis::upper})
      est.push_back(time_average_growth_from_quantiles(q0, q1, 1.0, b).rate);
    CHECK(truth >= *std::ranges::min_element(est));
    CHECK(truth <= *std::ranges::max_element(est));
  }
}

TEST_CASE("finer grouping moves the estimate towards the ungrouped value") {
  const std::vector<std::size_t> qs{10, 50, 100, 500, 1000};
  std::vector<V> errors(qs.size());
  std::mt19937_64 gen(4);
  std::normal_distribution<double> z;
  for (int seed = 0; seed < 21; ++seed) {
    const V x0 = lognormal(gen, 10'000, 9.0, 0.8);
    V x1 = x0;
    for (auto& x : x1) x *= std::exp(0.02 + 0.3 * z(gen));
    const double truth = time_average_growth_rate(x0, x1, 1.0);
    for (std::size_t k = 0; k < qs.size(); ++k) {
      const auto est = time_average_growth_from_quantiles(group_by_quantile(x0, qs[k], 0),
                                                          group_by_quantile(x1, qs[k], 1), 1.0);
      errors[k].push_back(std::fabs(est.rate - truth));
    }
  }
  double previous = INFINITY;
  for (auto& e : errors) {
    std::nth_element(e.begin(), e.begin() + 10, e.end());
    CHECK(e[10] < previous);
    previous = e[10];
  }
}

TEST_CASE("basis substitutions are applied and flagged") {
  const auto t = synthetic_percentiles(2000, 1.0);
  const auto up = basis_values(t, Basis::upper);
  CHECK(up.top_upper_substituted);
  CHECK_FALSE(up.bottom_lower_substituted);
  CHECK(up.values.back() == t.rows.back().average);

  const auto lo = basis_values(t, Basis::lower);
  CHECK(lo.bottom_lower_substituted);
  CHECK(lo.values.front() == doctest::Approx(0.1 * 200.0));

  const auto avg = basis_values(t, Basis::average);
  CHECK_FALSE(avg.top_upper_substituted);
  CHECK_FALSE(avg.bottom_lower_substituted);

  const auto est = time_average_growth_from_quantiles(t, scaled(t, 2001, 1.1), 1.0, Basis::upper);
  CHECK(est.top_upper_substituted);

  QuantileTable zeros;
  zeros.rows = {{1, 1.0, 0.0, 2.0}, {2, 2.0, 0.0, 3.0}, {3, 4.0, 3.0, std::nullopt}};
  CHECK_THROWS_AS(basis_values(zeros, Basis::lower), DomainError);
}

TEST_CASE("quantile estimator errors") {
  const auto t = synthetic_percentiles(2000, 1.0);
  auto shorter = t;
  shorter.rows.pop_back();
  CHECK_THROWS_AS(time_average_growth_from_quantiles(t, shorter, 1.0), InvalidArgument);
  CHECK_THROWS_AS(time_average_growth_from_quantiles(t, t, 0.0), InvalidArgument);
  CHECK_THROWS_AS(parse_basis("median"), InvalidArgument);
  CHECK(parse_basis("upper") == Basis::upper);

  auto broken = t;
  broken.rows[5].lower = broken.rows[5].average * 2;
  CHECK_THROWS_AS(broken.validate(), InvalidArgument);
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("bottom truncation of tables") {
  auto t = synthetic_percentiles(2000, 1.0);
  t.population = 1000.0;
  CHECK(truncate_bottom(t, 0.0) == t);
  const auto cut = truncate_bottom(t, 0.10);
  REQUIRE(cut.size() == 90);
  CHECK(cut.rows.front().rank == 11);
  CHECK(cut.rows.back().rank == 100);
  CHECK(*cut.population == doctest::Approx(900.0));

  QuantileTable deciles;
  for (int q = 1; q <= 10; ++q) deciles.rows.push_back({q, 1.0 * q, 1.0 * q, std::nullopt});
  CHECK_THROWS_AS(truncate_bottom(deciles, 0.15), InvalidArgument);
  CHECK_THROWS_AS(truncate_bottom(t, 1.0), InvalidArgument);
  CHECK_THROWS_AS(truncate_bottom(t, -0.1), InvalidArgument);
}

TEST_CASE("bottom truncation of cross-sections") {
  V x(100);
  std::iota(x.begin(), x.end(), 1.0);
  V expect(90);
  std::iota(expect.begin(), expect.end(), 11.0);
  CHECK(truncate_bottom(x, 0.10) == expect);
  CHECK(truncate_bottom(x, 0.0) == x);

  const V mixed{5, 1, 9, 3, 7, 2, 8, 4, 6, 10};
  CHECK(truncate_bottom(mixed, 0.3) == V{5, 9, 7, 8, 4, 6, 10});
  const auto cs = truncate_bottom(IncomeCrossSection(4.0, mixed), 0.5);
  CHECK(cs.time() == 4.0);
  CHECK(std::ranges::equal(cs.incomes(), V{9, 7, 8, 6, 10}));
}

TEST_CASE("truncation sweep") {
  const auto a = synthetic_percentiles(1980, 1.0);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> wobble(0.9, 1.4);
  auto b = a;
  b.year = 2020;
  for (auto& r : b.rows) r.average *= wobble(gen);
  const std::vector<QuantileTable> series{a, b};

  const auto s = truncation_sweep(series);
  REQUIRE(s.points.size() == 100);
  CHECK(s.first_year == 1980);
  CHECK(s.last_year == 2020);
  CHECK(s.points.front().percentile == 1);
  CHECK(s.points.back().percentile == 100);
  CHECK(s.points.back().gdp_growth == s.points.back().ddp_growth);
  CHECK(s.points.back().gdp_growth == doctest::Approx(b.rows.back().average / a.rows.back().average));

  const auto part = truncation_sweep(series, 40, 60);
  REQUIRE(part.points.size() == 21);
  CHECK(part.points[0] == s.points[39]);
  CHECK(part.points[20] == s.points[59]);

  const std::vector<QuantileTable> uniform{a, scaled(a, 2020, std::exp(0.02 * 40))};
  for (const auto& p : truncation_sweep(uniform).points) {
    CHECK(p.gdp_growth == doctest::Approx(std::exp(0.8)).epsilon(1e-13));
    CHECK(p.ddp_growth == doctest::Approx(std::exp(0.8)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(truncation_sweep(std::vector<QuantileTable>{a}), InvalidArgument);
  CHECK_THROWS_AS(truncation_sweep(series, 50, 10), InvalidArgument);
  CHECK_THROWS_AS(truncation_sweep(series, 0, 10), InvalidArgument);
  auto deciles = a;
  deciles.rows.resize(10);
  deciles.rows.back().upper.reset();
  CHECK_THROWS_AS(truncation_sweep(std::vector<QuantileTable>{a, deciles}), InvalidArgument);
}

TEST_CASE("bottom collapse moves the DDP curve, not the GDP curve") {
  std::mt19937_64 gen(6);
  const V pop = lognormal(gen, 100'000, 10.0, 0.9);
  V later = pop;
  std::sort(later.begin(), later.end());
  // Everyone grows 30%, except the poorest 5% whose incomes fall a hundredfold.
  for (std::size_t i = 0; i < later.size(); ++i) later[i] *= i < 5000 ? 0.01 : 1.3;
  const std::vector<QuantileTable> series{group_by_quantile(pop, 100, 1980),
                                          group_by_quantile(later, 100, 2020)};
  const auto s = truncation_sweep(series);
  const auto& p1 = s.points[0];
  const auto& p10 = s.points[9];
  CHECK(std::fabs(p1.gdp_growth / p10.gdp_growth - 1.0) < 0.01);
  CHECK(p10.ddp_growth / p1.ddp_growth > 1.2);
  CHECK(p10.ddp_growth == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("grouping by quantile") {
  const V x{4, 1, 3, 2, 6, 5};
  const auto t = group_by_quantile(x, 3, 1999);
  CHECK(t.year == 1999);
  REQUIRE(t.size() == 3);
  CHECK(t.rows[0] == QuantileRow{1, 1.5, 1.0, 3.0});
  CHECK(t.rows[1] == QuantileRow{2, 3.5, 3.0, 5.0});
  CHECK(t.rows[2] == QuantileRow{3, 5.5, 5.0, std::nullopt});
  CHECK(*t.population == 6.0);
  CHECK_NOTHROW(t.validate());
  CHECK_THROWS_AS(group_by_quantile(x, 4, 0), InvalidArgument);
  CHECK_THROWS_AS(group_by_quantile(x, 0, 0), InvalidArgument);
}
