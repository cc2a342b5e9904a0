#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace casson {

/// Run one CLI command. Returns the process exit code: 0 success, 1 domain
/// error, 2 usage error, 3 numeric nonconvergence. Never throws.
int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace casson
