#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpmkit::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Artifacts go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpmkit::cli
