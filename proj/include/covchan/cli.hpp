#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covchan/report.hpp"

namespace covchan {

// Runs one analysis. `args` excludes the program name. Human-readable
// output goes to `out` (or the JSON report with --json); errors to `err`.
// Exit codes: 0 analysis ran, 1 usage/parse error, 2 a configured limit
// was hit (strategy budget, enumeration cap).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            AnalysisReport* report_out = nullptr);

}  // namespace covchan
