// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revscope::cli {

enum ExitCode : int {
    kSuccess = 0,
    kDataError = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revscope::cli
