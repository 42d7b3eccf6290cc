// Copyright 2026 The qcav developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include "qcav/channel.hpp"
#include "qcav/model_io.hpp"

namespace qcav::commands {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;      // parse / invalid argument / cap
inline constexpr int kExitPrecondition = 3;    // incomplete family, not PSD, ...
inline constexpr int kExitNumerical = 4;       // internal numerical failure

struct CommonOptions {
  double tol = kDefaultTol;
  bool pretty = false;      // human-readable tables instead of JSON
  bool timestamp = true;    // include generated_at in the report
};

// A finished command: the JSON report (or human-readable text) plus the
// process exit code.  On failure `text` carries the diagnostic and
// `report` an {"error": ...} object.
struct CommandResult {
  io::Json report;
  std::string text;
  int exit_code = kExitOk;
};

// Renders result.report (or result.text under --pretty) to the stream
// the caller chooses; returns result.exit_code.
std::string render(const CommandResult& result, const CommonOptions& options);

// qcav classify --model M --code C: gamma matrix, rank, taxonomy.
CommandResult cmd_classify(const std::string& model_arg,
                           const std::string& code_arg,
                           const CommonOptions& options);

// qcav find-dfs --model M: joint eigenspaces of the error operators
// (identity-proportional operators are skipped).
CommandResult cmd_find_dfs(const std::string& model_arg,
                           const CommonOptions& options);

struct FidelityArgs {
  std::string model_arg;
  std::optional<std::string> code_arg;
  std::optional<std::string> state_arg;  // JSON ket file for a single state
  bool complete = false;  // complete the error family before evaluating
  channel::FidelityOptions optimizer;
};

// qcav fidelity: state or worst-case code fidelity under the model.
CommandResult cmd_fidelity(const FidelityArgs& args, const CommonOptions& options);

struct SimulateArgs {
  std::string code_arg;                    // built-in code name
  std::optional<std::string> model_arg;    // default: matching pairwise model
  std::optional<std::string> inject_label; // single-operator deterministic run
  int trials = 0;                          // Monte Carlo trials when > 0
  std::uint64_t seed = 1;
  bool complete = true;                    // complete the model's error part
  std::optional<std::string> state_arg;    // logical input; default |0...0>
};

// qcav simulate: inject-measure-recover round trips, single-shot or
// Monte Carlo.
CommandResult cmd_simulate(const SimulateArgs& args, const CommonOptions& options);

struct SearchArgs {
  std::string model_arg;
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  double residual_tol = 1e-8;
};

// qcav search-code: randomized search for a correctable code.
CommandResult cmd_search_code(const SearchArgs& args, const CommonOptions& options);

}  // namespace qcav::commands
