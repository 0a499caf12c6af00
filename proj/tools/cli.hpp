// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace viralkit::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 on a runtime or data error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace viralkit::cli
