#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergo/errors.hpp"
#include "ergo/exact_sum.hpp"
#include "ergo/growth.hpp"
#include "support.hpp"

using namespace ergo;
using ergo::test::within_ulps;

namespace {

const double kE = std::exp(1.0);
using V = std::vector<double>;

// Lognormal incomes from a std generator, independent of the library RNG.
V lognormal(std::mt19937_64& gen, std::size_t n, double meanlog, double sdlog) {
  std::normal_distribution<double> z(meanlog, sdlog);
  V v(n);
  for (auto& x : v) x = std::exp(z(gen));
  return v;
}

}  // namespace

TEST_CASE("per-capita levels") {
  CHECK(gdp_per_capita(V{100, 100}) == 100.0);
  CHECK(gdp_per_capita(V{50, 200}) == 125.0);
  CHECK(gdp_per_capita(V{7}) == 7.0);
  CHECK(ddp_per_capita(V{100, 100}) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(ddp_per_capita(V{50, 200}) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(ddp_per_capita(V{1, kE * kE}) == doctest::Approx(kE).epsilon(1e-15));

  CHECK_THROWS_AS(gdp_per_capita(V{}), InvalidArgument);
  CHECK_THROWS_AS(ddp_per_capita(V{}), InvalidArgument);
  CHECK_THROWS_AS(ddp_per_capita(V{1, 0}), DomainError);
  CHECK_THROWS_AS(ddp_per_capita(V{1, -3}), DomainError);
}

TEST_CASE("constant samples have exact means") {
  for (double c : {0.1, 1.0 / 3.0, 7.3, 12345.678, 1e300}) {
    const V v(1001, c);
    CHECK(arithmetic_mean(v) == c);
    CHECK(mean_log(v) == std::log(c));
    CHECK(ergodicity_gap(v) == 0.0);
  }
}

TEST_CASE("growth rates of a two-person economy") {
  const V before{100, 100}, after{50, 200};
  // ln 1.25 to 29 digits.
  CHECK(ensemble_average_growth_rate(before, after, 1.0) ==
        doctest::Approx(0.22314355131420975576629509031).epsilon(1e-15));
  // ln 50 + ln 200 and 2 ln 100 agree only up to rounding of the logs.
  CHECK(within_ulps(time_average_growth_rate(before, after, 1.0), 0.0, 10, {std::log(200.0)}));
  CHECK(ensemble_average_growth_rate(after, after, 3.0) == 0.0);
  CHECK(time_average_growth_rate(after, after, 0.5) == 0.0);

  CHECK_THROWS_AS(ensemble_average_growth_rate(before, after, 0.0), InvalidArgument);
  CHECK_THROWS_AS(time_average_growth_rate(before, after, -1.0), InvalidArgument);
  CHECK_THROWS_AS(time_average_growth_rate(before, V{1, 0}, 1.0), DomainError);
  // Distribution-level statistics accept different population sizes.
  CHECK(time_average_growth_rate(V{10}, V{10, 10, 10}, 1.0) == 0.0);
}

TEST_CASE("ergodicity gap values") {
  CHECK(ergodicity_gap(V{4.2, 4.2, 4.2}) == 0.0);
  // ln((1 + e)/2) - 1/2 to 29 digits.
  CHECK(ergodicity_gap(V{1, kE}) == doctest::Approx(0.12011450695827752463176337351).epsilon(1e-14));
  CHECK_THROWS_AS(ergodicity_gap(V{2, 0}), DomainError);
}

TEST_CASE("individual growth rates") {
  const auto ig = individual_growth_rates(V{100, 100}, V{50, 200}, 1.0);
  REQUIRE(ig.rates.size() == 2);
  CHECK(within_ulps(ig.rates[0], -std::log(2.0), 10, {std::log(200.0)}));
  CHECK(within_ulps(ig.rates[1], std::log(2.0), 10, {std::log(200.0)}));
  CHECK(ig.weights == V{0.5, 0.5});
  const auto same = individual_growth_rates(V{3, 5, 9}, V{3, 5, 9}, 2.0);
  CHECK(same.rates == V{0, 0, 0});
  CHECK_THROWS_AS(individual_growth_rates(V{1, 2}, V{1}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(individual_growth_rates(V{1, 2}, V{1, 2}, 0.0), InvalidArgument);
}

TEST_CASE("plutocratic weighted average") {
  CHECK(plutocratic_weighted_average({V{0.03, 0.03, 0.03}, V{0.2, 0.3, 0.5}}) ==
        doctest::Approx(0.03).epsilon(1e-15));

  // Large changes: the first-order approximation gives 0 instead of ln 1.25.
  const auto big = individual_growth_rates(V{100, 100}, V{50, 200}, 1.0);
  CHECK(within_ulps(plutocratic_weighted_average(big), 0.0, 10, {std::log(200.0)}));
  CHECK(ensemble_average_growth_rate(V{100, 100}, V{50, 200}, 1.0) > 0.22);

  // Small changes: the error is second order in the perturbation scale.
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const V x0 = lognormal(gen, 100, 9.0, 0.7);
    V x1 = x0;
    for (auto& x : x1) x *= std::exp(eps * z(gen));
    const double approx = plutocratic_weighted_average(individual_growth_rates(x0, x1, 1.0));
    const double exact = ensemble_average_growth_rate(x0, x1, 1.0);
    CHECK(std::fabs(approx - exact) <= eps * eps);
  }

  CHECK_THROWS_AS(plutocratic_weighted_average({V{0.1, 0.1}, V{0.5, 0.6}}), InvalidArgument);
  CHECK_THROWS_AS(plutocratic_weighted_average({V{0.1}, V{0.5, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(plutocratic_weighted_average({V{0.1, 0.1}, V{1.5, -0.5}}), InvalidArgument);
}

TEST_CASE("top share") {
  CHECK(top_share(V(10, 3.0), 0.1) == doctest::Approx(0.1).epsilon(1e-15));
  V half{50};
  for (int i = 0; i < 9; ++i) half.push_back(50.0 / 9.0);
  CHECK(top_share(half, 0.1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(top_share(half, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  // Ties at the cutoff: two of three tied earners make up the top half.
  CHECK(top_share(V{1, 2, 2, 2}, 0.5) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  // ceil(0.25 * 3) = 1 earner.
  CHECK(top_share(V{1, 2, 5}, 0.25) == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
  // 0.3 * 10 is 3 up to rounding, not 4.
  V ten(10);
  std::iota(ten.begin(), ten.end(), 1.0);
  CHECK(top_share(ten, 0.3) == doctest::Approx(27.0 / 55.0).epsilon(1e-15));

  CHECK_THROWS_AS(top_share(V{1, 2}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(top_share(V{1, 2}, 1.5), InvalidArgument);
  CHECK_THROWS_AS(top_share(V{}, 0.1), InvalidArgument);
}

TEST_CASE("GBM ensemble: plutocratic rate mu, democratic rate mu - sigma^2/2") {
  RandomSource rng(2024);
  const GbmParams p{0.05, 0.2};
  const auto x0 = sample_initial_ensemble(Degenerate{1e4}, 1'000'000, rng);
  const auto x1 = gbm_step_exact(x0, p, 1.0, rng);
  const double tol = 3.0 * 0.2 / 1e3;
  CHECK(std::fabs(ensemble_average_growth_rate(x0.incomes(), x1.incomes(), 1.0) - 0.05) < tol);
  CHECK(std::fabs(time_average_growth_rate(x0.incomes(), x1.incomes(), 1.0) - 0.03) < tol);

  const auto y0 = sample_initial_ensemble(Degenerate{1e4}, 100'000, rng);
  const auto y10 = gbm_step_exact(y0, p, 10.0, rng);
  CHECK(ergodicity_gap(y10.incomes()) == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("growth report") {
  const IncomeCrossSection a(2.0, {100, 100}), b(3.5, {50, 200});
  const auto r = growth_report(a, b);
  CHECK(r.dt == 1.5);
  CHECK(r.gdp_pc_initial == 100.0);
  CHECK(r.gdp_pc_terminal == 125.0);
  CHECK(r.gap_initial == 0.0);
  CHECK(r.gap_terminal > 0.0);
  CHECK(r.g_democratic == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.top10_initial == 0.5);
  CHECK(r.top10_terminal == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(growth_report(b, a), InvalidArgument);

  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const V x0 = lognormal(gen, 1 + trial * 37, 9.2, 1.0);
    const V x1 = lognormal(gen, 1 + trial * 41, 9.4, 1.3);
    const double dt = 0.25 + trial * 0.05;
    const auto g = growth_report(x0, x1, dt);
    CHECK(g == growth_report(x0, x1, dt, Exec::serial));
    CHECK(g.gap_initial >= 0.0);
    CHECK(g.gap_terminal >= 0.0);
    const double lp = std::log(g.gdp_pc_terminal / g.gdp_pc_initial);
    const double ld = std::log(g.ddp_pc_terminal / g.ddp_pc_initial);
    CHECK(within_ulps(g.g_plutocratic * dt, lp, 10,
                      {std::log(g.gdp_pc_initial), std::log(g.gdp_pc_terminal)}));
    CHECK(within_ulps(g.g_democratic * dt, ld, 10,
                      {std::log(g.ddp_pc_initial), std::log(g.ddp_pc_terminal)}));
  }
}

TEST_CASE("Jensen gap, gap-rate identity and equal-weight identity") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> sd(0.0, 2.0), dtd(0.1, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial * 13;
    const double dt = dtd(gen);
    const V start(n, 1e4);
    V end = start;
    const double s = sd(gen);
    std::normal_distribution<double> z(0.0, s);
    for (auto& x : end) x *= std::exp(z(gen));

    const double gp = ensemble_average_growth_rate(start, end, dt);
    const double gd = time_average_growth_rate(start, end, dt);
    REQUIRE(gp - gd >= 0.0);

    const double j0 = ergodicity_gap(start), j1 = ergodicity_gap(end);
    CHECK(j0 == 0.0);
    CHECK(within_ulps((gp - gd) * dt, j1 - j0, 10,
                      {std::log(gdp_per_capita(end)), mean_log(end), std::log(1e4), j1, gp * dt}));

    const auto ig = individual_growth_rates(start, end, dt);
    const double equal_weight = exact_sum(ig.rates) / static_cast<double>(n);
    CHECK(within_ulps(equal_weight, gd, 10, {gd, mean_log(end) / dt, std::log(1e4) / dt}));
  }

  // Equality exactly when terminal incomes coincide.
  const V start(50, 1e4), level(50, 3.7e4);
  CHECK(ensemble_average_growth_rate(start, level, 2.0) ==
        time_average_growth_rate(start, level, 2.0));
}

TEST_CASE("mobility and scale invariance") {
  std::mt19937_64 gen(12);
  const V x0 = lognormal(gen, 5000, 9.0, 0.8);
  const V x1 = lognormal(gen, 5000, 9.1, 0.9);
  const double gp = ensemble_average_growth_rate(x0, x1, 1.0);
  const double gd = time_average_growth_rate(x0, x1, 1.0);
  const double j = ergodicity_gap(x1);
  V shuffled = x1;
  for (int k = 0; k < 20; ++k) {
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    REQUIRE(ensemble_average_growth_rate(x0, shuffled, 1.0) == gp);
    REQUIRE(time_average_growth_rate(x0, shuffled, 1.0) == gd);
    REQUIRE(ergodicity_gap(shuffled) == j);
    REQUIRE(top_share(shuffled, 0.1) == top_share(x1, 0.1));
  }

  for (double c : {1e-3, 0.5, 3.7, 1e6}) {
    V scaled = x1;
    for (auto& x : scaled) x *= c;
    CHECK(ergodicity_gap(scaled) == doctest::Approx(j).epsilon(1e-11));
    CHECK(top_share(scaled, 0.1) == doctest::Approx(top_share(x1, 0.1)).epsilon(1e-14));
    CHECK(gdp_per_capita(scaled) == doctest::Approx(c * gdp_per_capita(x1)).epsilon(1e-14));
    CHECK(ddp_per_capita(scaled) == doctest::Approx(c * ddp_per_capita(x1)).epsilon(1e-13));
  }
}

TEST_CASE("serial and parallel summaries agree bit for bit") {
  std::mt19937_64 gen(13);
  for (std::size_t n : {1u, 10u, 8191u, 8193u, 100000u}) {
    const V x = lognormal(gen, n, 0.0, 1.5);
    const auto a = summarize(x, Exec::serial);
    const auto b = summarize(x, Exec::parallel);
    CHECK(a.mean == b.mean);
    CHECK(a.mean_log == b.mean_log);
    CHECK(a.gap == b.gap);
  }
}
