#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmrun::cli {

/// Runs one command-line invocation. `args` excludes the program name.
/// Returns the process exit code: 0 success, 1 verification failure,
/// 2 usage or parse error. Output is deterministic: identical invocations
/// produce identical bytes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmrun::cli
