#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

namespace ergo::test {

// Spacing of doubles at |v|.
inline double ulp(double v) {
  v = std::fabs(v);
  return std::nextafter(v, std::numeric_limits<double>::infinity()) - v;
}

// |a - b| <= n ulps, measured at the largest operand magnitude (at least 1)
// that went into either side.
inline bool within_ulps(double a, double b, int n, std::initializer_list<double> operands) {
  double scale = 1.0;
  for (double o : operands) scale = std::max(scale, std::fabs(o));
  return std::fabs(a - b) <= n * ulp(scale);
}

}  // namespace ergo::test
