#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmulab::cli {

/// Entry point shared by the pmulab binary and the CLI tests.
/// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Digits used for CSV output (PMULAB_PRECISION_DIGITS, default 17).
int precision_digits();

} // namespace pmulab::cli
