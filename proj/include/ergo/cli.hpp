#pragma once

#include <iosfwd>

namespace ergo::cli {

/// Entry point of the `ergo` tool. Returns 0 on success, 1 on a runtime
/// error, 2 on a usage error. Output files are written directly; "-" as an
/// output path writes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ergo::cli
