#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relaxpt/models.hpp"
#include "relaxpt/solver.hpp"

namespace relaxpt {

enum class PartitionKind { en, natural };

struct SweepSpec {
  std::string parameter;
  std::vector<std::string> values;
};

struct OutputPaths {
  std::string trace_csv;
  std::string trace_json;
  std::string summary_csv;         // sweep only
  std::string trace_dir = "sweep";  // sweep only: one trace per grid point
};

struct ExperimentConfig {
  ModelSpec model = ModelSpec::anharmonic(2, "1");
  /// Operator or pencil read from Matrix Market instead of a built model.
  std::optional<std::string> matrix;
  std::optional<std::pair<std::string, std::string>> pencil;
  PartitionKind partition = PartitionKind::en;
  SolverConfig solver;
  /// Unset means the lowest diagonal entry (lowest A/S ratio for pencils).
  std::optional<std::size_t> target;
  OutputPaths outputs;
  std::optional<SweepSpec> sweep;

  /// Throws ConfigError listing every problem found.
  void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Names accepted by sweeps: model fields (s, g, N, B, L, h, seed), solver
/// fields (alpha, tol, max_iter, memory) and target.
bool is_sweep_parameter(const ExperimentConfig& c, const std::string& name);
ExperimentConfig with_parameter(const ExperimentConfig& c, const std::string& name, const std::string& value);

struct RunSummary {
  std::string model;
  /// Energy on the model's physical scale (Zeeman: Delta E - 1/2).
  double energy = 0.0;
  /// Eigenvalue estimate of the operator or pencil as iterated.
  double raw_energy = 0.0;
  double residual = 0.0;
  std::size_t k = 0;
  Status status = Status::max_iterations;
  std::size_t target = 0;
  std::size_t anderson_fallbacks = 0;
  std::size_t negative_beta_steps = 0;
  std::vector<double> psi;
  ConvergenceTrace trace;
};

/// Builds the model, runs the solver and writes the configured trace files.
RunSummary run_experiment(const ExperimentConfig& c);

struct SweepRow {
  std::string parameter;
  std::string value;
  std::optional<RunSummary> result;
  std::string error;
};

/// Runs every grid point (up to `threads` at a time); rows come back in grid
/// order. Failures are recorded per row and do not stop the sweep.
std::vector<SweepRow> run_sweep(const ExperimentConfig& c, std::size_t threads);

/// RELAXPT_THREADS if set and positive, else the hardware concurrency.
std::size_t sweep_threads_from_env();

/// param,value,E_final,residual,k,status
void write_sweep_summary(const std::vector<SweepRow>& rows, std::ostream& os);

}  // namespace relaxpt
