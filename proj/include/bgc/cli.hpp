#pragma once

#include <iosfwd>

namespace bgc::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bgc::cli
