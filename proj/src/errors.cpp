#include "ergo/errors.hpp"

#include <cstdio>

namespace ergo {

namespace {
std::string step_message(std::size_t individual, double draw, double multiplier) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "Euler step produced non-positive multiplier %.17g for individual %zu "
                "(normal draw %.17g); reduce dt or use the exact scheme",
                multiplier, individual, draw);
  return buf;
}
}  // namespace

StepSizeError::StepSizeError(std::size_t individual, double normal_draw, double multiplier)
    : std::runtime_error(step_message(individual, normal_draw, multiplier)),
      individual_(individual),
      draw_(normal_draw),
      multiplier_(multiplier) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

}  // namespace ergo
