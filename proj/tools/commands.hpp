#ifndef ANYON_TOOLS_COMMANDS_HPP
#define ANYON_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "anyon/metric_groups.hpp"

namespace anyon::cli {

enum ExitCode : int {
    kPass = 0,
    kFail = 1,
    kUsage = 2,
    kIoError = 3,
    kParseError = 4,
    kDomainError = 5,
    kBudgetExceeded = 6,
    kInternalError = 7,
};

// Runs one command line (args excludes the program name). The report goes to
// `out`, diagnostics and timing to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The prime model whose form is the negative of the given one.
PrimeFamilySpec conjugate_spec(const PrimeFamilySpec& spec);

}  // namespace anyon::cli

#endif
