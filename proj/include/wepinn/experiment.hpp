#pragma once

// Benchmark registry, experiment configuration, and the run/baseline/table drivers.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wepinn/geometry.hpp"
#include "wepinn/losses.hpp"
#include "wepinn/metrics.hpp"
#include "wepinn/models.hpp"
#include "wepinn/network.hpp"
#include "wepinn/train.hpp"

namespace wepinn {

/// A reported quantity derived from the conservative state.
struct Variable {
  std::string name;
  std::function<double(const State&)> extract;
};

/// Fixed facts about one benchmark.
struct Benchmark {
  std::string name;
  LawPtr law;
  Domain domain;
  /// Conservative initial data.
  std::function<State(double)> initial;
  /// Conservative exact solution.
  std::function<State(double, double)> exact;
  std::vector<double> table_times;
  std::vector<Variable> variables;
  /// Index into variables of the headline error (u, rho or h).
  int headline = 0;
  BoundaryMode default_boundary = BoundaryMode::dirichlet_state;
};

const std::vector<std::string>& experiment_names();

/// Throws ConfigError for unknown names.
Benchmark make_benchmark(const std::string& name, double gamma = 1.4, double g = 9.81);

struct ExperimentConfig {
  std::string experiment = "burgers-shock";
  std::string preset = "desk";
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  /// Overrides of the benchmark domain; unset keeps the registry values.
  std::optional<double> x_lo, x_hi, t_end;
  NetworkConfig network;
  SamplerConfig sampler;
  TrainConfig train;
  BaselineConfig baseline;
  int quad_points = 6;
  BoundaryMode boundary = BoundaryMode::dirichlet_state;
  int tvd_levels = 16;
  int tvd_points = 256;
  int monitor_volumes = 2000;
  int error_points = 1000;
  double gamma = 1.4;
  double g = 9.81;

  void validate() const;
};

/// Preset "desk" or "paper" for the named experiment.
ExperimentConfig preset_config(const std::string& experiment, const std::string& preset);

/// Applies the fields present in a JSON object on top of cfg.
void apply_config_json(ExperimentConfig& cfg, const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

/// Benchmark with the configured domain overrides applied.
Benchmark configured_benchmark(const ExperimentConfig& cfg);
Problem make_problem(const ExperimentConfig& cfg, const Benchmark& bench);

struct ErrorTableRow {
  std::string method;
  std::string variable;
  double time = 0.0;
  RelativeErrors err;  // nan where the reference norm vanishes
};

/// Errors of approx (conservative) against the benchmark's exact solution.
std::vector<ErrorTableRow> error_table(const Benchmark& bench, const std::string& method,
                                       const ProfileFn& approx, int n_points = 1000);
void write_error_csv(const std::filesystem::path& path, const std::vector<ErrorTableRow>& rows);

struct DiagnosticRow {
  long iter = 0;
  double cons = 0.0;
  double ent = 0.0;
  double bound = 0.0;
  double error = 0.0;  // relative L1 of the headline variable at T
};

struct RunSummary {
  std::string method;
  TrainResult train;
  std::vector<ErrorTableRow> errors;
  std::vector<DiagnosticRow> diagnostic;
  std::optional<double> correlation;
  double k_hat = 0.0;
  bool admissible = true;      // every grid state at every table time
  double total_variation_T = 0.0;
  double seconds = 0.0;
};

/// Trains, evaluates and writes artifacts into cfg.out_dir.
RunSummary run_experiment(const ExperimentConfig& cfg);
RunSummary run_baseline(const ExperimentConfig& cfg);

/// Recomputes the error table from a saved checkpoint (weak or baseline).
std::vector<ErrorTableRow> table_from_checkpoint(const ExperimentConfig& cfg,
                                                 const std::filesystem::path& checkpoint,
                                                 bool baseline);

/// Conservative-state profile of a trained model.
ProfileFn weak_profile(const Problem& problem, const NetworkParams& params);
ProfileFn baseline_profile(const Problem& problem, const NetworkParams& params);

}  // namespace wepinn
