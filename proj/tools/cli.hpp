#pragma once

#include <iosfwd>

namespace govpulse::cli {

/// Runs one `govpulse` invocation. Returns 0 on success, 1 when inputs fail
/// validation or a computation cannot proceed, 2 on a usage error (usage
/// text goes to `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace govpulse::cli
