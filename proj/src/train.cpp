#include "wepinn/train.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>

#include "wepinn/errors.hpp"

namespace wepinn {

void TrainConfig::validate() const {
  if (adam_iters < 0 || lbfgs_iters < 0) throw ConfigError("train: iteration counts must be >= 0");
  if (checkpoint_every < 0) throw ConfigError("train: checkpoint_every must be >= 0");
  if (lbfgs_iters > 0 && lbfgs_volumes < 1) throw ConfigError("train: lbfgs_volumes must be >= 1");
  AdamConfig a = adam;
  a.lr = adam_lr;
  a.validate();
  lbfgs.validate();
}

void Problem::validate() const {
  if (!law) throw ConfigError("problem: missing conservation law");
  domain.validate();
  if (domain.dim != law->dimension()) throw ConfigError("problem: domain and law dimensions differ");
  if (!initial.value) throw ConfigError("problem: missing initial condition");
  sampler.validate(domain);
  if (quad_points < 1 || quad_points > kMaxQuadPoints) throw ConfigError("problem: quadrature order");
  if (tvd_levels != 0 && (tvd_levels < 2 || tvd_points < 2))
    throw ConfigError("problem: TVD cloud needs at least 2 levels and 2 points");
  if (monitor_volumes < 1) throw ConfigError("problem: monitor_volumes must be >= 1");
}

Ansatz make_ansatz(const Problem& problem, NetworkParams params) {
  return Ansatz(std::move(params), problem.initial, problem.domain.t_end, problem.scaling);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool finite(const LossBreakdown& l) {
  return std::isfinite(l.total) && (l.grad.size() == 0 || l.grad.allFinite());
}

class Checkpointer {
 public:
  Checkpointer(const TrainConfig& config, std::function<std::pair<double, double>(const NetworkParams&)> monitor)
      : config_(config), monitor_(std::move(monitor)) {}

  void maybe(long iter, const NetworkParams& params, std::vector<Checkpoint>& out, bool force = false) {
    if (!force && (config_.checkpoint_every == 0 || iter % config_.checkpoint_every != 0)) return;
    if (!out.empty() && out.back().iter == iter) return;
    const auto [cons, ent] = monitor_(params);
    out.push_back({iter, params.flat(), cons, ent});
    if (!config_.checkpoint_path.empty()) save_checkpoint(config_.checkpoint_path, params);
  }

 private:
  const TrainConfig& config_;
  std::function<std::pair<double, double>(const NetworkParams&)> monitor_;
};

TvdCloud maybe_cloud(const Problem& problem, Rng& rng) {
  if (problem.tvd_levels == 0) return {};
  return sample_tvd_cloud(problem.domain, problem.tvd_levels, problem.tvd_points, rng);
}

}  // namespace

TrainResult train(const TrainConfig& config, const Problem& problem, NetworkParams initial) {
  config.validate();
  problem.validate();
  const auto start = Clock::now();
  const WeakLossEvaluator loss(*problem.law, gauss_legendre(problem.quad_points), problem.boundary);
  Ansatz ansatz = make_ansatz(problem, std::move(initial));
  const bool use_tvd = problem.tvd_levels > 0;

  Rng monitor_rng = make_rng(config.seed, 4);
  SamplerConfig monitor_cfg = problem.sampler;
  monitor_cfg.n_volumes = problem.monitor_volumes;
  const std::vector<ControlVolume> monitor_set = sample_volumes(problem.domain, monitor_cfg, monitor_rng);
  Checkpointer checkpointer(config, [&](const NetworkParams& p) {
    const Ansatz a = make_ansatz(problem, p);
    const LossBreakdown l = loss.evaluate(a, monitor_set, nullptr, false);
    return std::pair{l.cons, l.ent};
  });

  TrainResult result;
  result.history.reserve(static_cast<std::size_t>(config.adam_iters + config.lbfgs_iters));
  NetworkParams last_good = ansatz.params();
  long iter = 0;
  checkpointer.maybe(iter, ansatz.params(), result.checkpoints);

  auto fail = [&](const std::string& why) {
    result.diverged = true;
    result.message = why;
    result.params = last_good;
    if (!config.checkpoint_path.empty()) save_checkpoint(config.checkpoint_path, last_good);
    return result;
  };

  // Adam with fresh volumes and cloud each iteration.
  Rng volume_rng = make_rng(config.seed, 1);
  Rng cloud_rng = make_rng(config.seed, 2);
  AdamConfig adam = config.adam;
  adam.lr = config.adam_lr;
  AdamState adam_state;
  for (int k = 0; k < config.adam_iters; ++k) {
    const std::vector<ControlVolume> volumes = sample_volumes(problem.domain, problem.sampler, volume_rng);
    const TvdCloud cloud = maybe_cloud(problem, cloud_rng);
    LossBreakdown l;
    try {
      l = loss.evaluate(ansatz, volumes, use_tvd ? &cloud : nullptr, true);
    } catch (const AdmissibilityError& e) {
      return fail(std::string("adam: ") + e.what());
    }
    if (!finite(l)) return fail("adam: non-finite loss at iteration " + std::to_string(iter));
    last_good = ansatz.params();
    Eigen::VectorXd theta = ansatz.params().flat();
    const double gnorm = adam_step(adam, adam_state, theta, l.grad);
    ansatz.params().set_flat(theta);
    result.history.push_back({iter, l.cons, l.ent, l.tvd, l.total, gnorm, elapsed_ms(start)});
    ++iter;
    checkpointer.maybe(iter, ansatz.params(), result.checkpoints);
  }

  // L-BFGS on a frozen sample.
  if (config.lbfgs_iters > 0) {
    Rng frozen_rng = make_rng(config.seed, 3);
    SamplerConfig frozen_cfg = problem.sampler;
    frozen_cfg.n_volumes = config.lbfgs_volumes;
    const std::vector<ControlVolume> volumes = sample_volumes(problem.domain, frozen_cfg, frozen_rng);
    const TvdCloud cloud = maybe_cloud(problem, frozen_rng);
    LossBreakdown latest;
    const ObjectiveFn objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
      ansatz.params().set_flat(theta);
      try {
        latest = loss.evaluate(ansatz, volumes, use_tvd ? &cloud : nullptr, true);
      } catch (const AdmissibilityError&) {
        grad = Eigen::VectorXd::Constant(theta.size(), std::nan(""));
        return std::nan("");
      }
      grad = latest.grad;
      return latest.total;
    };
    const auto on_step = [&](const LbfgsStep& step) {
      // The last objective call was the accepted point when the search succeeded.
      if (step.accepted)
        result.history.push_back({iter, latest.cons, latest.ent, latest.tvd, latest.total,
                                  step.grad_norm, elapsed_ms(start)});
      else
        result.history.push_back({iter, std::nan(""), std::nan(""), std::nan(""), step.value,
                                  step.grad_norm, elapsed_ms(start)});
      ++iter;
      NetworkParams p = ansatz.params();
      p.set_flat(*step.params);
      checkpointer.maybe(iter, p, result.checkpoints);
    };
    const LbfgsResult r = lbfgs_run(config.lbfgs, objective, ansatz.params().flat(),
                                    config.lbfgs_iters, on_step);
    if (!std::isfinite(r.best_value)) return fail("lbfgs: non-finite loss");
    ansatz.params().set_flat(r.best);
  }

  result.params = ansatz.params();
  checkpointer.maybe(iter, result.params, result.checkpoints, true);
  return result;
}

StrongFormBatch sample_strong_batch(const Problem& problem, const BaselineConfig& baseline, Rng& rng) {
  const Domain& dom = problem.domain;
  const int d = dom.dim;
  const int m = problem.law->components();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StrongFormBatch b;
  b.collocation.resize(d + 1, baseline.collocation);
  for (int i = 0; i < baseline.collocation; ++i) {
    for (int a = 0; a < d; ++a) b.collocation(a, i) = dom.x_lo[a] + dom.length(a) * unit(rng);
    b.collocation(d, i) = dom.t_end * unit(rng);
  }
  b.ic_points.resize(d + 1, baseline.initial_points);
  b.ic_targets.resize(m, baseline.initial_points);
  for (int i = 0; i < baseline.initial_points; ++i) {
    for (int a = 0; a < d; ++a) b.ic_points(a, i) = dom.x_lo[a] + dom.length(a) * unit(rng);
    b.ic_points(d, i) = 0.0;
    b.ic_targets.col(i) = problem.initial.value(std::span<const double>(b.ic_points.col(i).data(), d));
  }
  const bool dirichlet = problem.boundary.mode == BoundaryMode::dirichlet_state;
  const int nb = dirichlet ? baseline.boundary_points : 0;
  b.bc_points.resize(d + 1, nb);
  b.bc_targets.resize(m, nb);
  for (int i = 0; i < nb; ++i) {
    const int axis = static_cast<int>(unit(rng) * d) % d;
    for (int a = 0; a < d; ++a) b.bc_points(a, i) = dom.x_lo[a] + dom.length(a) * unit(rng);
    b.bc_points(axis, i) = i % 2 == 0 ? dom.x_lo[axis] : dom.x_hi[axis];
    b.bc_points(d, i) = dom.t_end * unit(rng);
    b.bc_targets.col(i) = problem.boundary.state(
        std::span<const double>(b.bc_points.col(i).data(), d), b.bc_points(d, i));
  }
  return b;
}

TrainResult train_baseline(const TrainConfig& config, const BaselineConfig& baseline,
                           const Problem& problem, NetworkParams initial) {
  config.validate();
  problem.validate();
  if (baseline.collocation < 1 || baseline.initial_points < 0 || baseline.boundary_points < 0)
    throw ConfigError("baseline: bad point counts");
  const auto start = Clock::now();
  ScaledNetwork net{std::move(initial), problem.scaling};
  const LawPtr law = problem.law;

  Checkpointer checkpointer(config, [](const NetworkParams&) { return std::pair{0.0, 0.0}; });
  TrainResult result;
  NetworkParams last_good = net.params;
  long iter = 0;
  auto fail = [&](const std::string& why) {
    result.diverged = true;
    result.message = why;
    result.params = last_good;
    if (!config.checkpoint_path.empty()) save_checkpoint(config.checkpoint_path, last_good);
    return result;
  };

  Rng rng = make_rng(config.seed, 5);
  AdamConfig adam = config.adam;
  adam.lr = config.adam_lr;
  AdamState state;
  for (int k = 0; k < config.adam_iters; ++k) {
    const StrongFormBatch batch = sample_strong_batch(problem, baseline, rng);
    StrongFormLoss l;
    try {
      l = strong_pinn_loss(net, *law, batch);
    } catch (const AdmissibilityError& e) {
      return fail(std::string("baseline adam: ") + e.what());
    }
    if (!std::isfinite(l.total) || !l.grad.allFinite())
      return fail("baseline adam: non-finite loss at iteration " + std::to_string(iter));
    last_good = net.params;
    Eigen::VectorXd theta = net.params.flat();
    const double gnorm = adam_step(adam, state, theta, l.grad);
    net.params.set_flat(theta);
    result.history.push_back({iter, l.residual, l.initial, l.boundary, l.total, gnorm, elapsed_ms(start)});
    ++iter;
    checkpointer.maybe(iter, net.params, result.checkpoints);
  }

  if (config.lbfgs_iters > 0) {
    Rng frozen = make_rng(config.seed, 6);
    const StrongFormBatch batch = sample_strong_batch(problem, baseline, frozen);
    StrongFormLoss latest;
    const ObjectiveFn objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
      net.params.set_flat(theta);
      try {
        latest = strong_pinn_loss(net, *law, batch);
      } catch (const AdmissibilityError&) {
        grad = Eigen::VectorXd::Constant(theta.size(), std::nan(""));
        return std::nan("");
      }
      grad = latest.grad;
      return latest.total;
    };
    const auto on_step = [&](const LbfgsStep& step) {
      result.history.push_back({iter, latest.residual, latest.initial, latest.boundary, step.value,
                                step.grad_norm, elapsed_ms(start)});
      ++iter;
      NetworkParams p = net.params;
      p.set_flat(*step.params);
      checkpointer.maybe(iter, p, result.checkpoints);
    };
    const LbfgsResult r = lbfgs_run(config.lbfgs, objective, net.params.flat(), config.lbfgs_iters, on_step);
    if (!std::isfinite(r.best_value)) return fail("baseline lbfgs: non-finite loss");
    net.params.set_flat(r.best);
  }
  result.params = net.params;
  checkpointer.maybe(iter, result.params, result.checkpoints, true);
  return result;
}

void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "iter,cons,ent,tvd,total,grad_norm,wall_ms\n" << std::setprecision(17);
  for (const HistoryRow& r : rows)
    out << r.iter << ',' << r.cons << ',' << r.ent << ',' << r.tvd << ',' << r.total << ','
        << r.grad_norm << ',' << std::setprecision(6) << r.wall_ms << std::setprecision(17) << '\n';
}

}  // namespace wepinn
