/*
 * Copyright 2026 The qdl-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qdl::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitCacheMiss = 3,
  kExitResource = 4,
};

std::string_view version();

/// `# qdl-lab v<version> cmd=<command> seed=<seed|none>`
std::string csv_banner(std::string_view command, std::optional<std::uint64_t> seed);

/// Parses a flat key=value file into `--key=value` tokens. Blank lines and
/// '#' comments are skipped; a line without '=' throws DomainError.
std::vector<std::string> read_config(const std::string& path);

/// Runs one command line (without the program name). CSV and summaries go to
/// `out` (or --out), diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdl::cli
