#pragma once

// Command-line front end. Exit codes: 0 holds / agree, 1 fails, 2 usage,
// input or cap errors.

#include <ostream>
#include <string>
#include <vector>

#include "qcf/cf_eval.hpp"

namespace qcf {

enum class ReportFormat { Plain, JsonLines };

struct Report {
  std::string formula;
  CfVerdict verdict;
  /// Bounds used, as key/value pairs in output order.
  std::vector<std::pair<std::string, std::string>> bounds;
  /// Names for witness ids; may be empty.
  std::vector<std::string> world_names;
};

/// plain: `RESULT holds|fails (bounded=yes|no)` then one `witness <id> <name>`
/// line per witness; json-lines: one object.
std::string report_format(const Report& r, ReportFormat format);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcf
