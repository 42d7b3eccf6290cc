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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcav/commands.hpp"

namespace {

int finish(const qcav::commands::CommandResult& result,
           const qcav::commands::CommonOptions& options) {
  std::cout << qcav::commands::render(result, options) << "\n";
  if (result.exit_code != 0) {
    std::cerr << "qcav: " << result.text << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qcav - analyze, search and simulate small quantum codes under "
      "correlated noise models"};
  app.require_subcommand(1);
  app.fallthrough();

  qcav::commands::CommonOptions common;
  bool no_timestamp = false;
  app.add_option("--tol", common.tol, "numerical tolerance")
      ->capture_default_str();
  app.add_flag("--pretty", common.pretty, "human-readable tables instead of JSON");
  app.add_flag("--no-timestamp", no_timestamp,
               "omit generated_at from the report");

  const std::string model_help =
      "model preset (pairwise:L=<n>, collective:n=<n>, correlated) or JSON file";
  const std::string code_help =
      "code preset (four-qubit, general-parity:L=<n>, correlated) or JSON file";

  // classify
  auto* classify = app.add_subcommand(
      "classify", "gamma matrix, rank and taxonomy of a code under a model");
  std::string classify_model, classify_code;
  classify->add_option("--model", classify_model, model_help)->required();
  classify->add_option("--code", classify_code, code_help)->required();

  // find-dfs
  auto* find_dfs = app.add_subcommand(
      "find-dfs", "joint eigenspaces preserved by the model's error operators");
  std::string dfs_model;
  find_dfs->add_option("--model", dfs_model, model_help)->required();

  // fidelity
  auto* fidelity = app.add_subcommand(
      "fidelity", "state fidelity or worst-case code fidelity under a model");
  qcav::commands::FidelityArgs fidelity_args;
  std::string fidelity_code, fidelity_state;
  fidelity->add_option("--model", fidelity_args.model_arg, model_help)->required();
  fidelity->add_option("--code", fidelity_code, code_help);
  fidelity->add_option("--state", fidelity_state, "JSON file with one ket");
  fidelity->add_flag("--complete", fidelity_args.complete,
                     "complete the error family before evaluating");
  fidelity->add_option("--multistarts", fidelity_args.optimizer.multistarts,
                       "random optimizer starts")
      ->capture_default_str();
  fidelity->add_option("--opt-seed", fidelity_args.optimizer.seed,
                       "optimizer seed")
      ->capture_default_str();

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "inject-measure-recover round trips through a code");
  qcav::commands::SimulateArgs simulate_args;
  std::string simulate_model, simulate_state;
  simulate->add_option("--code", simulate_args.code_arg,
                       "four-qubit or general-parity:L=<n>")
      ->required();
  simulate->add_option("--model", simulate_model,
                       model_help + "; defaults to the matching pairwise preset");
  simulate->add_option("--inject", simulate_args.inject_label,
                       "apply one labeled operator deterministically");
  simulate->add_option("--trials", simulate_args.trials,
                       "Monte Carlo trials over the full channel");
  simulate->add_option("--seed", simulate_args.seed, "simulation seed")
      ->capture_default_str();
  simulate->add_option("--state", simulate_state,
                       "JSON file with the logical input ket (default |0...0>)");
  bool no_complete = false;
  simulate->add_flag("--no-complete", no_complete,
                     "use the model family as-is instead of completing it");

  // search-code
  auto* search = app.add_subcommand(
      "search-code", "randomized search for a correctable code under a model");
  qcav::commands::SearchArgs search_args;
  search->add_option("--model", search_args.model_arg, model_help)->required();
  search->add_option("--dim", search_args.dim, "code dimension")
      ->capture_default_str();
  search->add_option("--trials", search_args.trials, "random starts")
      ->capture_default_str();
  search->add_option("--seed", search_args.seed, "search seed")
      ->capture_default_str();
  search->add_option("--residual-tol", search_args.residual_tol,
                     "acceptance residual")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : qcav::commands::kExitInputError;
  }
  common.timestamp = !no_timestamp;
  simulate_args.complete = !no_complete;

  if (classify->parsed()) {
    return finish(qcav::commands::cmd_classify(classify_model, classify_code, common),
                  common);
  }
  if (find_dfs->parsed()) {
    return finish(qcav::commands::cmd_find_dfs(dfs_model, common), common);
  }
  if (fidelity->parsed()) {
    if (!fidelity_code.empty()) fidelity_args.code_arg = fidelity_code;
    if (!fidelity_state.empty()) fidelity_args.state_arg = fidelity_state;
    return finish(qcav::commands::cmd_fidelity(fidelity_args, common), common);
  }
  if (simulate->parsed()) {
    if (!simulate_model.empty()) simulate_args.model_arg = simulate_model;
    if (!simulate_state.empty()) simulate_args.state_arg = simulate_state;
    return finish(qcav::commands::cmd_simulate(simulate_args, common), common);
  }
  if (search->parsed()) {
    return finish(qcav::commands::cmd_search_code(search_args, common), common);
  }
  std::cerr << app.help() << "\n";
  return qcav::commands::kExitInputError;
}
