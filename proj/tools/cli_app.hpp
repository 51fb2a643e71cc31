#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regcoreset::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 on usage or validation errors, 2 on internal errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regcoreset::cli
