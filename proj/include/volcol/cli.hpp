#pragma once

#include <string>
#include <vector>

#include "volcol/blowup.hpp"

namespace volcol {

/// Entry point behind the volcol binary. Returns the process exit code:
/// 0 success, 1 numeric failure, 2 usage or configuration error.
int cli_main(int argc, const char* const* argv);

/// Convenience overload for tests; args exclude the program name.
int cli_main(const std::vector<std::string>& args);

/// CSV with one row per (c, h) and a summary comment per stepsize.
/// Columns: c,h,estimate,status,steps,halvings.
std::string format_sweep_csv(const SweepRecord& record);

/// Single-row CSV for one blow-up report.
std::string format_report_csv(double c, double h, const BlowUpReport& report);

} // namespace volcol
