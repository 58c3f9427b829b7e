#include "wepinn/optim.hpp"

#include <cmath>
#include <vector>

#include "wepinn/errors.hpp"

namespace wepinn {

void AdamConfig::validate() const {
  if (!(lr > 0.0)) throw ConfigError("adam: learning rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
    throw ConfigError("adam: betas must lie in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("adam: eps must be positive");
}

double adam_step(const AdamConfig& config, AdamState& state, Eigen::VectorXd& params,
                 const Eigen::VectorXd& grad) {
  expects(grad.size() == params.size(), "adam: gradient size mismatch");
  if (!grad.allFinite()) throw NumericalError("adam: non-finite gradient");
  if (state.m.size() != params.size()) {
    state.m = Eigen::VectorXd::Zero(params.size());
    state.v = Eigen::VectorXd::Zero(params.size());
    state.step = 0;
  }
  const double norm = grad.norm();
  const double scale = config.clip_norm > 0.0 && norm > config.clip_norm ? config.clip_norm / norm : 1.0;
  ++state.step;
  state.m = config.beta1 * state.m + (1.0 - config.beta1) * scale * grad;
  state.v = config.beta2 * state.v + (1.0 - config.beta2) * (scale * grad).cwiseAbs2();
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  params.array() -= config.lr * (state.m.array() / c1) /
                    ((state.v.array() / c2).sqrt() + config.eps);
  return norm;
}

void LbfgsConfig::validate() const {
  if (history < 1) throw ConfigError("lbfgs: history must be at least 1");
  if (!(c1 > 0.0 && c1 < 1.0)) throw ConfigError("lbfgs: c1 must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw ConfigError("lbfgs: backtrack must lie in (0, 1)");
  if (max_trials < 1) throw ConfigError("lbfgs: max_trials must be at least 1");
}

Eigen::VectorXd lbfgs_direction(const LbfgsMemory& memory, const Eigen::VectorXd& grad) {
  Eigen::VectorXd q = grad;
  const std::size_t k = memory.s.size();
  std::vector<double> alpha(k);
  for (std::size_t i = k; i-- > 0;) {
    alpha[i] = memory.rho[i] * memory.s[i].dot(q);
    q -= alpha[i] * memory.y[i];
  }
  if (k > 0) q *= memory.s.back().dot(memory.y.back()) / memory.y.back().squaredNorm();
  for (std::size_t i = 0; i < k; ++i) {
    const double beta = memory.rho[i] * memory.y[i].dot(q);
    q += (alpha[i] - beta) * memory.s[i];
  }
  return -q;
}

bool lbfgs_push(LbfgsMemory& memory, const LbfgsConfig& config, Eigen::VectorXd s,
                Eigen::VectorXd y) {
  const double sy = s.dot(y);
  if (!(sy > config.curvature_eps)) return false;
  memory.rho.push_back(1.0 / sy);
  memory.s.push_back(std::move(s));
  memory.y.push_back(std::move(y));
  while (static_cast<int>(memory.s.size()) > config.history) {
    memory.s.pop_front();
    memory.y.pop_front();
    memory.rho.pop_front();
  }
  return true;
}

LbfgsResult lbfgs_run(const LbfgsConfig& config, const ObjectiveFn& f, Eigen::VectorXd params,
                      int max_iters, const std::function<void(const LbfgsStep&)>& on_step) {
  config.validate();
  LbfgsResult result;
  Eigen::VectorXd grad(params.size());
  double value = f(params, grad);
  result.best = params;
  result.best_value = value;
  if (!std::isfinite(value) || !grad.allFinite()) return result;

  LbfgsMemory memory;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd dir = lbfgs_direction(memory, grad);
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      memory = {};
      dir = -grad;
      slope = -grad.squaredNorm();
    }
    if (slope == 0.0) break;

    double step = 1.0;
    if (memory.s.empty()) step = std::min(1.0, 1.0 / std::max(grad.norm(), 1e-12));
    Eigen::VectorXd trial_grad(params.size());
    double trial_value = 0.0;
    bool accepted = false;
    for (int trial = 0; trial < config.max_trials; ++trial) {
      const Eigen::VectorXd trial_params = params + step * dir;
      trial_value = f(trial_params, trial_grad);
      if (std::isfinite(trial_value) && trial_grad.allFinite() &&
          trial_value <= value + config.c1 * step * slope) {
        accepted = true;
        lbfgs_push(memory, config, trial_params - params, trial_grad - grad);
        params = trial_params;
        value = trial_value;
        grad = trial_grad;
        break;
      }
      step *= config.backtrack;
    }
    ++result.iterations;
    if (!accepted) {
      ++result.failed_searches;
      // Steepest descent restart on the next iteration; stop if that failed too.
      if (memory.s.empty()) break;
      memory = {};
    }
    if (value < result.best_value) {
      result.best_value = value;
      result.best = params;
    }
    if (on_step) on_step({it, value, grad.norm(), accepted, &params});
  }
  return result;
}

}  // namespace wepinn
