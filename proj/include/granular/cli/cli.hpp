// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace granular::cli {

//! Runs one command line (without the program name). Failures print
//! `error: code=<name> exit=<status> message="<text>"` to `err`.
//! Returns 0, or 2 usage, 3 validation, 4 data, 5 computation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace granular::cli
