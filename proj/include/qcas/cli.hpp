#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcas {

// Dispatches one command line (without the program name) and writes its
// reports to the given streams. Exit codes: 0 success, 1 solver halt,
// 2 verification failure, 64 usage, 65 parse, 66 validation.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcas
