#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schrospec::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line. args excludes the program name. Output goes to `out` unless --out names a
/// file; diagnostics go to `err`. Returns 0 on success, 1 on failed checks or numerical errors and 2
/// on argument errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixed scientific formatting with 15 significant digits, as used in every CSV cell.
std::string format_number(double x);

}  // namespace schrospec::cli
