#pragma once

// Command-line front end. Every run writes exactly one JSON report (or CSV
// for `analyze --csv`) to `out`.
//
// Exit codes: 0 success, 1 usage or parse error, 2 numerical failure,
// 3 identity verification failure.

#include <ostream>
#include <string>
#include <vector>

namespace kahler {

inline constexpr const char* kReportSchema = "kahler-report/1";

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

} // namespace kahler
