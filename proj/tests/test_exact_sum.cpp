#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergo/exact_sum.hpp"

using ergo::ExactSum;
using ergo::exact_sum;

TEST_CASE("exact sum survives catastrophic cancellation") {
  const std::vector<double> xs{1e100, 1.0, -1e100, 1e-100};
  CHECK(exact_sum(xs) == 1.0 + 1e-100);
  // Reference from Python's math.fsum.
  CHECK(exact_sum(std::vector<double>{0.1, 0.2, 0.3, -0.6}) == 2.7755575615628914e-17);
  CHECK(exact_sum(std::vector<double>{}) == 0.0);
  CHECK(exact_sum(std::vector<double>(10, 0.1)) == 1.0);
}

TEST_CASE("exact sum matches a integer oracle") {
  // Multiples of 2^-20 below 2^30 sum exactly in int64 arithmetic.
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::int64_t> dist(-(std::int64_t{1} << 50), std::int64_t{1} << 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs;
    std::int64_t total = 0;
    for (int i = 0; i < 500; ++i) {
      const auto k = dist(gen);
      total += k;
      xs.push_back(std::ldexp(static_cast<double>(k), -20));
    }
    CHECK(exact_sum(xs) == std::ldexp(static_cast<double>(total), -20));
  }
}

TEST_CASE("result is independent of order and of how the input is split") {
  std::mt19937_64 gen(3);
  std::lognormal_distribution<double> ln(0.0, 3.0);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = ln(gen) * (gen() % 2 ? 1.0 : -1.0);
  const double reference = exact_sum(xs);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(xs.begin(), xs.end(), gen);
    const std::size_t cut = gen() % xs.size();
    ExactSum left, right;
    for (std::size_t i = 0; i < cut; ++i) left.add(xs[i]);
    for (std::size_t i = cut; i < xs.size(); ++i) right.add(xs[i]);
    right.merge(left);
    CHECK(right.value() == reference);
    CHECK(exact_sum(xs) == reference);
  }
}

TEST_CASE("half-way cases round to even") {
  // 1 + 2^-53 is exactly half an ulp above 1: ties to even gives 1.
  CHECK(exact_sum(std::vector<double>{1.0, 0x1p-53}) == 1.0);
  // A tiny extra push past the half-way point rounds up.
  CHECK(exact_sum(std::vector<double>{1.0, 0x1p-53, 0x1p-100}) == 1.0 + 0x1p-52);
}
