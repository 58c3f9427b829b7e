#pragma once

// Adam-then-L-BFGS training of the weak-entropy loss, and the strong-form baseline.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wepinn/ansatz.hpp"
#include "wepinn/geometry.hpp"
#include "wepinn/losses.hpp"
#include "wepinn/models.hpp"
#include "wepinn/network.hpp"
#include "wepinn/optim.hpp"

namespace wepinn {

struct TrainConfig {
  int adam_iters = 20000;
  int lbfgs_iters = 2000;
  double adam_lr = 1e-3;
  std::uint64_t seed = 0;
  /// Checkpoint cadence in iterations; 0 keeps only the final state.
  int checkpoint_every = 0;
  /// Size of the frozen volume set used by L-BFGS.
  int lbfgs_volumes = 5000;
  AdamConfig adam;
  LbfgsConfig lbfgs;
  /// Empty: checkpoints are kept in memory only.
  std::filesystem::path checkpoint_path;

  void validate() const;
};

/// Everything the loss needs besides the parameters.
struct Problem {
  LawPtr law;
  Domain domain;
  InitialCondition initial;
  BoundaryCondition boundary;
  InputScaling scaling;
  SamplerConfig sampler;
  int quad_points = 6;
  int tvd_levels = 16;
  int tvd_points = 256;
  /// Fixed volumes used for checkpoint diagnostics.
  int monitor_volumes = 2000;

  void validate() const;
};

struct HistoryRow {
  long iter = 0;
  double cons = 0.0;
  double ent = 0.0;
  double tvd = 0.0;
  double total = 0.0;
  double grad_norm = 0.0;
  double wall_ms = 0.0;
};

struct Checkpoint {
  long iter = 0;
  Eigen::VectorXd params;
  /// Losses on the fixed monitor set.
  double cons = 0.0;
  double ent = 0.0;
};

struct TrainResult {
  NetworkParams params;
  std::vector<HistoryRow> history;
  std::vector<Checkpoint> checkpoints;
  bool diverged = false;
  std::string message;
};

Ansatz make_ansatz(const Problem& problem, NetworkParams params);

TrainResult train(const TrainConfig& config, const Problem& problem, NetworkParams initial);

struct BaselineConfig {
  int collocation = 4096;
  int initial_points = 512;
  int boundary_points = 256;
};

/// Plain network fitted to the strong-form residual plus data terms. The
/// history columns cons/ent/tvd hold residual/initial/boundary terms.
TrainResult train_baseline(const TrainConfig& config, const BaselineConfig& baseline,
                           const Problem& problem, NetworkParams initial);

/// Strong-form training sample for the baseline.
StrongFormBatch sample_strong_batch(const Problem& problem, const BaselineConfig& baseline, Rng& rng);

void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRow>& rows);

}  // namespace wepinn
