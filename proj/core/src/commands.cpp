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

#include "qcav/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qcav/analysis.hpp"
#include "qcav/codes.hpp"
#include "qcav/errors.hpp"

namespace qcav::commands {
namespace {

using io::Json;

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

Json report_header(const std::string& command, const CommonOptions& options) {
  Json j = Json::object();
  j["command"] = command;
  j["tol"] = options.tol;
  if (options.timestamp) j["generated_at"] = utc_timestamp();
  return j;
}

Json circuit_to_json(const codes::Circuit& circuit) {
  Json gates = Json::array();
  for (const auto& gate : circuit.gates) {
    Json g = Json::object();
    if (gate.kind == codes::GateKind::cnot) {
      g["gate"] = "cnot";
      g["control"] = gate.control;
    } else {
      g["gate"] = "x";
    }
    g["target"] = gate.target;
    gates.push_back(std::move(g));
  }
  Json j = Json::object();
  j["qubits"] = circuit.n_qubits;
  j["gates"] = std::move(gates);
  return j;
}

Json complex_list(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex& v : values) out.push_back(io::complex_to_json(v));
  return out;
}

Json gamma_to_json(const analysis::GammaMatrix& gamma) {
  Json j = Json::object();
  j["entries"] = io::matrix_to_json(gamma.entries);
  Json evals = Json::array();
  for (std::int64_t k = 0; k < gamma.eigenvalues.size(); ++k) {
    evals.push_back(gamma.eigenvalues(k));
  }
  j["eigenvalues"] = std::move(evals);
  j["rank"] = gamma.rank;
  j["kl_satisfied"] = gamma.kl_satisfied;
  if (gamma.violation) {
    Json v = Json::object();
    v["operator_a"] = gamma.violation->a;
    v["operator_b"] = gamma.violation->b;
    v["logical_i"] = gamma.violation->i;
    v["logical_j"] = gamma.violation->j;
    v["magnitude"] = gamma.violation->magnitude;
    j["violation"] = std::move(v);
  }
  return j;
}

Json subspace_to_json(const Subspace& space) {
  Json basis = Json::array();
  for (int c = 0; c < space.dim(); ++c) {
    basis.push_back(io::state_to_json(space.basis_vector(c)));
  }
  Json j = Json::object();
  j["dimension"] = space.dim();
  j["basis"] = std::move(basis);
  return j;
}

// Runs `body`, mapping the shared exception taxonomy onto exit codes
// and an error envelope.
CommandResult guarded(const std::string& command, const CommonOptions& options,
                      const std::function<CommandResult()>& body) {
  auto failure = [&](const char* kind, int code, const std::string& message) {
    CommandResult result;
    result.report = report_header(command, options);
    Json err = Json::object();
    err["kind"] = kind;
    err["message"] = message;
    result.report["error"] = std::move(err);
    result.text = std::string(kind) + " error: " + message;
    result.exit_code = code;
    return result;
  };
  try {
    return body();
  } catch (const parse_error& e) {
    return failure("input", kExitInputError, e.what());
  } catch (const resource_limit_error& e) {
    return failure("input", kExitInputError, e.what());
  } catch (const std::invalid_argument& e) {
    return failure("input", kExitInputError, e.what());
  } catch (const incomplete_family_error& e) {
    return failure("precondition", kExitPrecondition, e.what());
  } catch (const not_psd_error& e) {
    return failure("precondition", kExitPrecondition, e.what());
  } catch (const canonicalization_error& e) {
    return failure("precondition", kExitPrecondition, e.what());
  } catch (const decode_error& e) {
    return failure("precondition", kExitPrecondition, e.what());
  } catch (const uncorrectable_syndrome_error& e) {
    return failure("precondition", kExitPrecondition, e.what());
  } catch (const std::exception& e) {
    return failure("numerical", kExitNumerical, e.what());
  }
}

// True for operators that are proportional to the identity (the
// "nothing happened" part of a model); they act trivially on every
// subspace and are excluded from preserved-subspace searches.
bool identity_proportional(const OperatorMatrix& op) {
  Complex scale = op.entries.trace() / static_cast<double>(op.dim());
  Matrix eye = Matrix::Identity(op.dim(), op.dim());
  return max_abs(Matrix(op.entries - scale * eye)) <=
         1e-12 * std::max(1.0, max_abs(op.entries));
}

noise::KrausFamily completed_error_part(const noise::KrausFamily& family,
                                        double tol) {
  std::vector<OperatorMatrix> errors;
  std::vector<std::string> labels;
  for (int a = 0; a < family.size(); ++a) {
    if (identity_proportional(family.ops[static_cast<std::size_t>(a)])) continue;
    errors.push_back(family.ops[static_cast<std::size_t>(a)]);
    labels.push_back(family.labels[static_cast<std::size_t>(a)]);
  }
  noise::KrausFamily error_part(family.n_qubits, std::move(errors), std::move(labels));
  return noise::complete_family(error_part, tol);
}

std::string format_complex(const Complex& z) {
  std::ostringstream out;
  out << std::setprecision(10) << z.real();
  if (z.imag() != 0.0) {
    out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  }
  return out.str();
}

std::string format_syndrome(const std::vector<int>& outcomes) {
  std::string s = "(";
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (k) s += ", ";
    if (outcomes[k] > 0) s += "+";
    s += std::to_string(outcomes[k]);
  }
  return s + ")";
}

}  // namespace

std::string render(const CommandResult& result, const CommonOptions& options) {
  if (options.pretty && !result.text.empty()) return result.text;
  return result.report.dump(2);
}

CommandResult cmd_classify(const std::string& model_arg,
                           const std::string& code_arg,
                           const CommonOptions& options) {
  return guarded("classify", options, [&]() {
    io::ModelSpec model = io::load_model(model_arg);
    io::CodeSpec code_spec = io::load_code(code_arg);
    if (model.register_width() != code_spec.register_width()) {
      throw std::invalid_argument(
          "model acts on " + std::to_string(model.register_width()) +
          " qubits but the code lives on " +
          std::to_string(code_spec.register_width()));
    }
    noise::KrausFamily family = model.to_family();
    analysis::CodeSubspace code = code_spec.to_code();
    analysis::CodeClassification result =
        analysis::classify(code, family, options.tol);

    CommandResult out;
    out.report = report_header("classify", options);
    out.report["model"] = model.to_json();
    out.report["code"] = code_spec.to_json();
    out.report["operator_labels"] = family.labels;
    out.report["gamma"] = gamma_to_json(result.gamma);
    out.report["classification"] = analysis::to_string(result.code_class);
    if (result.code_class == analysis::CodeClass::avoiding) {
      out.report["qeac_eigenvalues"] = complex_list(result.qeac_eigenvalues);
    }
    out.report["efficiency"] =
        channel::efficiency(code.dim(), code.n_qubits());

    std::ostringstream text;
    text << "classification: " << analysis::to_string(result.code_class) << "\n";
    text << "gamma rank:     " << result.gamma.rank << " of " << family.size()
         << "\n";
    text << "KL satisfied:   " << (result.gamma.kl_satisfied ? "yes" : "no")
         << "\n";
    text << "eigenvalues:   ";
    for (std::int64_t k = 0; k < result.gamma.eigenvalues.size(); ++k) {
      text << " " << std::setprecision(6) << result.gamma.eigenvalues(k);
    }
    text << "\n";
    if (result.code_class == analysis::CodeClass::avoiding) {
      text << "scalar action: ";
      for (const Complex& g : result.qeac_eigenvalues) {
        text << " " << format_complex(g);
      }
      text << "\n";
    }
    text << "efficiency:     "
         << channel::efficiency(code.dim(), code.n_qubits()) << "\n";
    out.text = text.str();
    return out;
  });
}

CommandResult cmd_find_dfs(const std::string& model_arg,
                           const CommonOptions& options) {
  return guarded("find-dfs", options, [&]() {
    io::ModelSpec model = io::load_model(model_arg);
    noise::KrausFamily family = model.to_family();
    std::vector<OperatorMatrix> error_ops;
    std::vector<std::string> used, skipped;
    for (int a = 0; a < family.size(); ++a) {
      if (identity_proportional(family.ops[static_cast<std::size_t>(a)])) {
        skipped.push_back(family.labels[static_cast<std::size_t>(a)]);
        continue;
      }
      error_ops.push_back(family.ops[static_cast<std::size_t>(a)]);
      used.push_back(family.labels[static_cast<std::size_t>(a)]);
    }

    CommandResult out;
    out.report = report_header("find-dfs", options);
    out.report["model"] = model.to_json();
    out.report["operators_used"] = used;
    out.report["operators_skipped"] = skipped;

    std::vector<analysis::JointEigenspaceResult> spaces;
    if (error_ops.empty()) {
      // Every operator is a scalar: the whole register is preserved.
      spaces.push_back({{}, hilbert::full_space(model.register_width())});
    } else {
      spaces = analysis::find_joint_eigenspace(error_ops, options.tol);
    }
    Json list = Json::array();
    for (const auto& space : spaces) {
      Json entry = Json::object();
      entry["eigenvalues"] = complex_list(space.eigenvalues);
      entry["dimension"] = space.space.dim();
      entry["subspace"] = subspace_to_json(space.space);
      list.push_back(std::move(entry));
    }
    out.report["spaces"] = std::move(list);
    out.report["total_preserved_dimension"] = [&] {
      int total = 0;
      for (const auto& s : spaces) total += s.space.dim();
      return total;
    }();

    std::ostringstream text;
    text << "joint eigenspaces: " << spaces.size() << "\n";
    for (const auto& space : spaces) {
      text << "  dim " << space.space.dim() << "  eigenvalues:";
      for (const Complex& ev : space.eigenvalues) {
        text << " " << format_complex(ev);
      }
      text << "\n";
    }
    out.text = text.str();
    return out;
  });
}

CommandResult cmd_fidelity(const FidelityArgs& args, const CommonOptions& options) {
  return guarded("fidelity", options, [&]() {
    if (args.state_arg && args.code_arg) {
      throw std::invalid_argument("give either --state or --code, not both");
    }
    if (!args.state_arg && !args.code_arg) {
      throw std::invalid_argument("need --state or --code");
    }
    io::ModelSpec model = io::load_model(args.model_arg);
    noise::KrausFamily family = model.to_family();
    if (args.complete) family = completed_error_part(family, options.tol);
    double residual = family.completeness_residual();
    if (residual > 1e-8) {
      throw incomplete_family_error(
          "family does not resolve the identity (residual " +
              std::to_string(residual) +
              "); pass --complete to add the square-root no-error operator",
          residual);
    }

    CommandResult out;
    out.report = report_header("fidelity", options);
    out.report["model"] = model.to_json();
    out.report["completed"] = args.complete;
    out.report["completeness_residual"] = family.completeness_residual();
    out.report["operator_labels"] = family.labels;

    std::ostringstream text;
    if (args.state_arg) {
      StateVector psi =
          io::state_from_json(io::read_json_file(*args.state_arg), "state");
      double f = channel::state_fidelity(psi, family);
      out.report["state"] = io::state_to_json(psi.normalized());
      out.report["fidelity"] = f;
      text << "state fidelity: " << std::setprecision(12) << f << "\n";
    } else if (args.code_arg) {
      io::CodeSpec code_spec = io::load_code(*args.code_arg);
      analysis::CodeSubspace code = code_spec.to_code();
      channel::FidelityResult result =
          channel::code_fidelity(code, family, args.optimizer);
      out.report["code"] = code_spec.to_json();
      Json worst = Json::object();
      worst["fidelity"] = result.value;
      worst["argmin"] = io::state_to_json(result.argmin_state);
      worst["iterations"] = result.iterations;
      worst["converged"] = result.converged;
      worst["multistarts"] = args.optimizer.multistarts;
      worst["seed"] = args.optimizer.seed;
      out.report["worst_case"] = std::move(worst);
      out.report["efficiency"] =
          channel::efficiency(code.dim(), code.n_qubits());
      text << "worst-case code fidelity: " << std::setprecision(12)
           << result.value << (result.converged ? "" : " (not converged)")
           << "\n";
      text << "efficiency: " << channel::efficiency(code.dim(), code.n_qubits())
           << "\n";
    }
    out.text = text.str();
    return out;
  });
}

CommandResult cmd_simulate(const SimulateArgs& args, const CommonOptions& options) {
  return guarded("simulate", options, [&]() {
    io::CodeSpec code_spec = io::load_code(args.code_arg);
    codes::RecoveryScheme scheme;
    int logical_qubits;
    if (code_spec.builtin == "four-qubit") {
      scheme = codes::RecoveryScheme::four_qubit;
      logical_qubits = 1;
    } else if (code_spec.builtin.rfind("general-parity:", 0) == 0) {
      scheme = codes::RecoveryScheme::general_parity;
      logical_qubits = (code_spec.register_width() - 2) / 2;
    } else {
      throw std::invalid_argument(
          "simulate supports the syndrome-recovery codes four-qubit and "
          "general-parity:L=<n>");
    }
    int pairs = code_spec.register_width() / 2;

    io::ModelSpec model =
        args.model_arg ? io::load_model(*args.model_arg)
                       : io::ModelSpec::preset("pairwise:L=" + std::to_string(pairs));
    noise::KrausFamily family = model.to_family();
    if (args.complete) family = completed_error_part(family, options.tol);

    StateVector input =
        args.state_arg
            ? io::state_from_json(io::read_json_file(*args.state_arg), "state")
            : hilbert::basis_state(logical_qubits, 0);
    if (input.n_qubits != logical_qubits) {
      throw std::invalid_argument("logical input must have " +
                                  std::to_string(logical_qubits) + " qubits");
    }

    CommandResult out;
    out.report = report_header("simulate", options);
    out.report["code"] = code_spec.to_json();
    out.report["model"] = model.to_json();
    out.report["completed"] = args.complete;
    out.report["operator_labels"] = family.labels;
    out.report["input"] = io::state_to_json(input.normalized());
    out.report["seed"] = args.seed;

    std::ostringstream text;
    if (args.inject_label && args.trials > 0) {
      throw std::invalid_argument("give either --inject or --trials, not both");
    }
    if (args.inject_label) {
      codes::RoundTripReport report = codes::roundtrip_inject(
          input, family, *args.inject_label, scheme, args.seed);
      Json j = Json::object();
      j["label"] = report.injected_label;
      j["syndrome"] = report.syndrome;
      j["recovery"] = circuit_to_json(report.recovery);
      j["fidelity"] = report.fidelity;
      j["correctable"] = report.correctable;
      j["zero_amplitude"] = report.zero_amplitude;
      out.report["inject"] = std::move(j);
      text << "injected " << report.injected_label << ": syndrome "
           << format_syndrome(report.syndrome) << ", fidelity "
           << std::setprecision(12) << report.fidelity << "\n";
    } else if (args.trials > 0) {
      codes::MonteCarloReport report = codes::roundtrip_monte_carlo(
          input, family, scheme, args.trials, args.seed);
      Json j = Json::object();
      j["trials"] = report.trials;
      j["seed"] = report.seed;
      j["mean_fidelity"] = report.mean_fidelity;
      j["std_error"] = report.std_error;
      Json per_op = Json::array();
      for (const auto& stats : report.per_operator) {
        Json s = Json::object();
        s["label"] = stats.label;
        s["count"] = stats.count;
        s["mean_fidelity"] = stats.mean_fidelity;
        per_op.push_back(std::move(s));
      }
      j["per_operator"] = std::move(per_op);
      Json per_syndrome = Json::array();
      for (const auto& stats : report.per_syndrome) {
        Json s = Json::object();
        s["outcomes"] = stats.outcomes;
        s["count"] = stats.count;
        try {
          s["recovery"] = circuit_to_json(
              codes::recovery_circuit(stats.outcomes, pairs, scheme));
        } catch (const uncorrectable_syndrome_error&) {
          s["recovery"] = nullptr;
        }
        per_syndrome.push_back(std::move(s));
      }
      j["per_syndrome"] = std::move(per_syndrome);
      j["uncorrectable"] = report.uncorrectable_count;
      out.report["monte_carlo"] = std::move(j);
      text << "trials: " << report.trials << "\n";
      text << "mean fidelity: " << std::setprecision(12) << report.mean_fidelity
           << "  (std error " << std::setprecision(3) << report.std_error
           << ")\n";
      for (const auto& stats : report.per_operator) {
        text << "  " << stats.label << ": count " << stats.count
             << ", mean fidelity " << std::setprecision(9)
             << stats.mean_fidelity << "\n";
      }
    } else {
      throw std::invalid_argument("need --inject <label> or --trials <n>");
    }
    out.text = text.str();
    return out;
  });
}

CommandResult cmd_search_code(const SearchArgs& args, const CommonOptions& options) {
  return guarded("search-code", options, [&]() {
    io::ModelSpec model = io::load_model(args.model_arg);
    noise::KrausFamily family = model.to_family();
    analysis::CodeSearchReport report = analysis::search_random_code(
        family, args.dim, args.trials, args.seed, args.residual_tol);

    CommandResult out;
    out.report = report_header("search-code", options);
    out.report["model"] = model.to_json();
    out.report["dim"] = args.dim;
    out.report["trials"] = args.trials;
    out.report["seed"] = args.seed;
    out.report["residual_tol"] = args.residual_tol;
    out.report["found"] = report.code.has_value();
    out.report["found_trial"] = report.found_trial;
    out.report["trials_used"] = report.trials_used;
    out.report["best_residual"] = report.best_residual;
    if (report.code) {
      out.report["code"] = subspace_to_json(*report.code);
    }

    std::ostringstream text;
    if (report.code) {
      text << "found a dimension-" << args.dim << " code on trial "
           << report.found_trial << " (residual " << std::setprecision(3)
           << report.best_residual << ")\n";
    } else {
      text << "no dimension-" << args.dim << " code found in " << args.trials
           << " trials (best residual " << std::setprecision(3)
           << report.best_residual << ")\n";
    }
    out.text = text.str();
    return out;
  });
}

}  // namespace qcav::commands
