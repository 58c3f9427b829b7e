#pragma once

// Adam with global-norm clipping, and limited-memory BFGS with Armijo backtracking.

#include <Eigen/Core>
#include <deque>
#include <functional>

namespace wepinn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Gradients with a larger Euclidean norm are rescaled to this norm; <= 0 disables.
  double clip_norm = 10.0;

  void validate() const;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
};

/// One Adam update in place. Throws NumericalError on a non-finite gradient.
/// Returns the gradient norm before clipping.
double adam_step(const AdamConfig& config, AdamState& state, Eigen::VectorXd& params,
                 const Eigen::VectorXd& grad);

struct LbfgsConfig {
  int history = 20;
  double c1 = 1e-4;
  double backtrack = 0.5;
  int max_trials = 30;
  double curvature_eps = 1e-10;

  void validate() const;
};

struct LbfgsMemory {
  std::deque<Eigen::VectorXd> s;
  std::deque<Eigen::VectorXd> y;
  std::deque<double> rho;
};

/// Two-loop recursion: approximately -H^{-1} grad.
Eigen::VectorXd lbfgs_direction(const LbfgsMemory& memory, const Eigen::VectorXd& grad);

/// Stores the pair unless s^T y is too small; drops the oldest past the limit.
bool lbfgs_push(LbfgsMemory& memory, const LbfgsConfig& config, Eigen::VectorXd s,
                Eigen::VectorXd y);

/// f(theta) and its gradient.
using ObjectiveFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct LbfgsStep {
  long iter = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  bool accepted = true;
  const Eigen::VectorXd* params = nullptr;
};

struct LbfgsResult {
  Eigen::VectorXd best;
  double best_value = 0.0;
  int iterations = 0;
  int failed_searches = 0;
};

/// Runs up to max_iters iterations from params; returns the best point seen.
LbfgsResult lbfgs_run(const LbfgsConfig& config, const ObjectiveFn& f, Eigen::VectorXd params,
                      int max_iters, const std::function<void(const LbfgsStep&)>& on_step = {});

}  // namespace wepinn
