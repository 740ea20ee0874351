// Copyright 2026 The Morita Tori Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "morita/io.hpp"

namespace morita {

enum ExitCode : int {
    kExitOk = 0,
    kExitCertificateFailed = 1,
    kExitParseError = 2,
    kExitUndefined = 3,
};

/// Command-line overrides; unset fields fall back to the document options.
struct CommandOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> samples;
    std::optional<double> tolerance;
    std::optional<std::size_t> word_length;
    std::optional<std::size_t> n;
    bool timings = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string output;  // JSON document
};

/// Names accepted by run_command.
const std::vector<std::string> &command_names();

/// Parses `input` (ignored by campaign when empty) and runs one subcommand.
/// Never throws MoritaError: failures map to exit codes with an error
/// object in the output.
CommandResult run_command(std::string_view name, std::string_view input, const CommandOptions &options);

CommandResult cmd_check(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_act(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_normalize(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_decompose(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_embed(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_pipeline(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_simulate(const JobDocument &doc, const CommandOptions &options);
CommandResult cmd_campaign(const JobDocument *doc, const CommandOptions &options);

}  // namespace morita
