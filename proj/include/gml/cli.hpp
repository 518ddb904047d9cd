#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;
inline constexpr int kExitUsage = 2;

struct Streams {
  std::ostream& out;
  std::ostream& err;
  /// ANSI styling of severities in text reports.
  bool color = false;
};

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, log lines and usage errors to `err`.
///
/// Exit codes: 0 success, 1 the report contains error-severity
/// diagnostics, 2 usage or I/O failure.
int run(const std::vector<std::string>& args, Streams streams);

}  // namespace gml::cli
