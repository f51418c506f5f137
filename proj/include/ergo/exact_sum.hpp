#pragma once

#include <span>
#include <vector>

namespace ergo {

/// Exact floating-point accumulator (Shewchuk's non-overlapping partials,
/// as in Python's math.fsum). `value()` is the correctly rounded sum of
/// everything added, so the result does not depend on the order of
/// additions nor on how the input was split across workers.
///
/// Inputs must be finite and the running total must not overflow.
class ExactSum {
 public:
  void add(double x);
  void merge(const ExactSum& other);
  double value() const;

  void clear() noexcept { partials_.clear(); }

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> xs);

}  // namespace ergo
