#pragma once

#include <iosfwd>

namespace csst::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csst::cli
