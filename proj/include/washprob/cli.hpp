#pragma once

#include <iosfwd>

namespace washprob::cli {

/// Runs the full command-line surface. Exit codes: 0 success, 2 usage
/// error, 3 data/integrity error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace washprob::cli
