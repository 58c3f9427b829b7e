#include "wepinn/losses.hpp"

#include <algorithm>
#include <cmath>

#include "wepinn/errors.hpp"

namespace wepinn {

bool BoundaryCondition::replaces(const Face& face) const {
  if (mode != BoundaryMode::dirichlet_state || face.axis >= face.box.dim) return false;
  const int a = face.axis;
  const double tol = 1e-12 * domain.length(a);
  const double boundary = face.side < 0 ? domain.x_lo[a] : domain.x_hi[a];
  return std::abs(face.fixed_value() - boundary) <= tol;
}

namespace {

struct FaceTotals {
  State cons;
  double ent = 0.0;
};

FaceTotals integrate_volume(const SolutionFn& u, const ConservationLaw& law,
                            const ControlVolume& volume, const QuadRule& rule,
                            const BoundaryCondition* bc, Guard guard) {
  const int d = volume.dim;
  expects(d == law.dimension(), "residual: control volume and law dimensions differ");
  FaceTotals totals{State::Zero(law.components()), 0.0};
  for (const Face& face : faces(volume)) {
    const FaceQuadrature fq = face_quadrature(face, rule);
    const bool replaced = bc != nullptr && bc->replaces(face);
    const double side = static_cast<double>(face.side);
    for (Eigen::Index i = 0; i < fq.points.cols(); ++i) {
      const std::span<const double> x(fq.points.col(i).data(), d);
      const double t = fq.points(d, i);
      const State state = replaced ? bc->state(x, t) : u(x, t);
      const double w = side * fq.weights[i];
      if (face.axis == d) {
        totals.cons += w * state;
        totals.ent += w * law.entropy(state, guard);
      } else {
        totals.cons += w * law.flux(state, face.axis, guard);
        totals.ent += w * law.entropy_flux(state, face.axis, guard);
      }
    }
  }
  return totals;
}

// One quadrature point of the batched evaluator.
struct PointRef {
  int volume;
  int axis;
  double weight;      // signed: side * surface weight
  Eigen::Index col;   // column in the network batch, -1 when replaced
  State fixed_state;  // boundary state when replaced
};

}  // namespace

State weak_residual(const SolutionFn& u, const ConservationLaw& law, const ControlVolume& volume,
                    const QuadRule& rule, const BoundaryCondition* bc, Guard guard) {
  return integrate_volume(u, law, volume, rule, bc, guard).cons;
}

double entropy_residual(const SolutionFn& u, const ConservationLaw& law,
                        const ControlVolume& volume, const QuadRule& rule,
                        const BoundaryCondition* bc, Guard guard) {
  return integrate_volume(u, law, volume, rule, bc, guard).ent;
}

WeakLossEvaluator::WeakLossEvaluator(const ConservationLaw& law, QuadRule rule,
                                     BoundaryCondition bc, Guard guard)
    : law_(&law), rule_(std::move(rule)), bc_(std::move(bc)), guard_(guard) {
  if (bc_.mode == BoundaryMode::dirichlet_state)
    expects(static_cast<bool>(bc_.state), "loss: dirichlet boundary needs a state function");
}

namespace {

struct Assembled {
  std::vector<PointRef> refs;
  Eigen::MatrixXd net_points;
  Eigen::Index cloud_begin = 0;
};

Assembled assemble(const ConservationLaw& law, std::span<const ControlVolume> volumes,
                   const QuadRule& rule, const BoundaryCondition& bc, const TvdCloud* cloud,
                   int d) {
  Assembled out;
  const int per_face = d == 1 ? rule.size() : rule.size() * rule.size();
  const Eigen::Index max_points =
      static_cast<Eigen::Index>(volumes.size()) * 2 * (d + 1) * per_face +
      (cloud ? static_cast<Eigen::Index>(cloud->times.size()) * cloud->points_per_level() : 0);
  out.net_points.resize(d + 1, max_points);
  out.refs.reserve(max_points);
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < volumes.size(); ++k) {
    expects(volumes[k].dim == law.dimension(), "loss: control volume and law dimensions differ");
    for (const Face& face : faces(volumes[k])) {
      const FaceQuadrature fq = face_quadrature(face, rule);
      const bool replaced = bc.replaces(face);
      for (Eigen::Index i = 0; i < fq.points.cols(); ++i) {
        PointRef ref{static_cast<int>(k), face.axis, face.side * fq.weights[i], -1, State()};
        if (replaced) {
          ref.fixed_state = bc.state(std::span<const double>(fq.points.col(i).data(), d),
                                     fq.points(d, i));
        } else {
          out.net_points.col(col) = fq.points.col(i);
          ref.col = col++;
        }
        out.refs.push_back(std::move(ref));
      }
    }
  }
  out.cloud_begin = col;
  if (cloud != nullptr) {
    for (std::size_t j = 0; j < cloud->times.size(); ++j) {
      const auto& xs = cloud->x[j];
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) expects(xs[i - 1] <= xs[i], "tvd: cloud level is not sorted");
        out.net_points(0, col) = xs[i];
        out.net_points(1, col) = cloud->times[j];
        ++col;
      }
    }
  }
  out.net_points.conservativeResize(Eigen::NoChange, col);
  return out;
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Variation of each cloud level; returns the arg max level.
int tvd_levels(const Eigen::MatrixXd& values, Eigen::Index begin, const TvdCloud& cloud,
               double* max_tv) {
  int best = -1;
  double best_tv = 0.0;
  const Eigen::Index n = cloud.points_per_level();
  for (std::size_t j = 0; j < cloud.times.size(); ++j) {
    const Eigen::Index base = begin + static_cast<Eigen::Index>(j) * n;
    double tv = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
      tv += (values.col(base + i + 1) - values.col(base + i)).cwiseAbs().sum();
    if (best < 0 || tv > best_tv) {
      best = static_cast<int>(j);
      best_tv = tv;
    }
  }
  *max_tv = best < 0 ? 0.0 : best_tv;
  return best;
}

}  // namespace

std::vector<std::pair<State, double>> WeakLossEvaluator::residuals(
    const Ansatz& ansatz, std::span<const ControlVolume> volumes) const {
  const ConservationLaw& law = *law_;
  const int d = law.dimension();
  const Assembled a = assemble(law, volumes, rule_, bc_, nullptr, d);
  const Eigen::MatrixXd values = ansatz.eval_batch(a.net_points);
  std::vector<std::pair<State, double>> out(volumes.size(),
                                            {State::Zero(law.components()), 0.0});
  for (const PointRef& ref : a.refs) {
    const State state = ref.col >= 0 ? State(values.col(ref.col)) : ref.fixed_state;
    auto& [r, e] = out[ref.volume];
    if (ref.axis == d) {
      r += ref.weight * state;
      e += ref.weight * law.entropy(state, guard_);
    } else {
      r += ref.weight * law.flux(state, ref.axis, guard_);
      e += ref.weight * law.entropy_flux(state, ref.axis, guard_);
    }
  }
  return out;
}

LossBreakdown WeakLossEvaluator::evaluate(const Ansatz& ansatz,
                                          std::span<const ControlVolume> volumes,
                                          const TvdCloud* cloud, bool with_gradient) const {
  if (volumes.empty()) throw ConfigError("loss: empty control-volume list");
  const ConservationLaw& law = *law_;
  const int d = law.dimension();
  const int m = law.components();
  expects(ansatz.components() == m && ansatz.spatial_dim() == d,
          "loss: ansatz shape does not match the conservation law");
  if (cloud != nullptr) expects(d == 1, "tvd: only one spatial dimension is supported");

  const Assembled a = assemble(law, volumes, rule_, bc_, cloud, d);
  const Ansatz::Evaluation eval = ansatz.evaluate(a.net_points);
  const Eigen::MatrixXd& values = eval.values();

  LossBreakdown out;
  const std::size_t n_vol = volumes.size();
  std::vector<State> res(n_vol, State::Zero(m));
  std::vector<double> ent(n_vol, 0.0);
  for (const PointRef& ref : a.refs) {
    const State state = ref.col >= 0 ? State(values.col(ref.col)) : ref.fixed_state;
    if (guard_ == Guard::clamped && law.needs_clamp(state)) ++out.clamped_points;
    if (ref.axis == d) {
      res[ref.volume] += ref.weight * state;
      ent[ref.volume] += ref.weight * law.entropy(state, guard_);
    } else {
      res[ref.volume] += ref.weight * law.flux(state, ref.axis, guard_);
      ent[ref.volume] += ref.weight * law.entropy_flux(state, ref.axis, guard_);
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n_vol);
  std::vector<double> measure(n_vol);
  for (std::size_t k = 0; k < n_vol; ++k) {
    measure[k] = volumes[k].measure();
    out.cons += res[k].squaredNorm() / measure[k];
    const double pos = std::max(0.0, ent[k]);
    out.ent += pos * pos / measure[k];
  }
  out.cons *= inv_n;
  out.ent *= inv_n;

  if (cloud != nullptr) {
    for (Eigen::Index c = a.cloud_begin; c < values.cols(); ++c)
      if (guard_ == Guard::clamped && law.needs_clamp(values.col(c))) ++out.clamped_points;
    out.tvd_level = tvd_levels(values, a.cloud_begin, *cloud, &out.tvd);
  }
  out.total = kLambdaCons * out.cons + kLambdaEnt * out.ent + kLambdaTvd * out.tvd;
  if (!with_gradient) return out;

  Eigen::MatrixXd cot = Eigen::MatrixXd::Zero(m, values.cols());
  for (const PointRef& ref : a.refs) {
    if (ref.col < 0) continue;
    const State state = values.col(ref.col);
    const double cons_coef = kLambdaCons * 2.0 * inv_n / measure[ref.volume];
    const double ent_coef =
        ent[ref.volume] > 0.0 ? kLambdaEnt * 2.0 * inv_n * ent[ref.volume] / measure[ref.volume] : 0.0;
    State g;
    if (ref.axis == d) {
      g = cons_coef * res[ref.volume];
      if (ent_coef != 0.0) g += ent_coef * law.entropy_gradient(state, guard_);
    } else {
      g = cons_coef * (law.flux_jacobian(state, ref.axis, guard_).transpose() * res[ref.volume]);
      if (ent_coef != 0.0) g += ent_coef * law.entropy_flux_gradient(state, ref.axis, guard_);
    }
    cot.col(ref.col) += ref.weight * g;
  }
  if (cloud != nullptr && out.tvd_level >= 0) {
    const Eigen::Index n = cloud->points_per_level();
    const Eigen::Index base = a.cloud_begin + static_cast<Eigen::Index>(out.tvd_level) * n;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (int c = 0; c < m; ++c) {
        const double s = kLambdaTvd * sign(values(c, base + i + 1) - values(c, base + i));
        cot(c, base + i + 1) += s;
        cot(c, base + i) -= s;
      }
    }
  }
  out.grad = eval.backward(cot);
  return out;
}

double cons_loss(const Ansatz& ansatz, const ConservationLaw& law,
                 std::span<const ControlVolume> volumes, const QuadRule& rule,
                 const BoundaryCondition& bc) {
  return WeakLossEvaluator(law, rule, bc).evaluate(ansatz, volumes, nullptr, false).cons;
}

double ent_loss(const Ansatz& ansatz, const ConservationLaw& law,
                std::span<const ControlVolume> volumes, const QuadRule& rule,
                const BoundaryCondition& bc) {
  return WeakLossEvaluator(law, rule, bc).evaluate(ansatz, volumes, nullptr, false).ent;
}

double tvd_loss(const Ansatz& ansatz, const TvdCloud& cloud) {
  expects(ansatz.spatial_dim() == 1, "tvd: only one spatial dimension is supported");
  Eigen::Index total = 0;
  for (std::size_t j = 0; j < cloud.times.size(); ++j) {
    expects(static_cast<int>(cloud.x[j].size()) == cloud.points_per_level(),
            "tvd: levels must have equal point counts");
    expects(std::is_sorted(cloud.x[j].begin(), cloud.x[j].end()), "tvd: cloud level is not sorted");
    total += static_cast<Eigen::Index>(cloud.x[j].size());
  }
  Eigen::MatrixXd pts(2, total);
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < cloud.times.size(); ++j)
    for (double x : cloud.x[j]) {
      pts(0, col) = x;
      pts(1, col++) = cloud.times[j];
    }
  double tv = 0.0;
  tvd_levels(ansatz.eval_batch(pts), 0, cloud, &tv);
  return tv;
}

LossBreakdown total_loss(const Ansatz& ansatz, const ConservationLaw& law,
                         std::span<const ControlVolume> volumes, const TvdCloud& cloud,
                         const QuadRule& rule, const BoundaryCondition& bc) {
  return WeakLossEvaluator(law, rule, bc).evaluate(ansatz, volumes, &cloud, true);
}

StrongFormLoss strong_pinn_loss(const ScaledNetwork& net, const ConservationLaw& law,
                                const StrongFormBatch& batch, Guard guard) {
  const int d = law.dimension();
  const int m = law.components();
  const NetworkParams& params = net.params;
  expects(params.input_dim() == d + 1 && params.output_dim() == m,
          "strong loss: network shape does not match the conservation law");
  expects(batch.collocation.rows() == d + 1 && batch.collocation.cols() > 0,
          "strong loss: need collocation points");
  expects(batch.ic_points.cols() == batch.ic_targets.cols() &&
              batch.bc_points.cols() == batch.bc_targets.cols(),
          "strong loss: point and target counts differ");

  StrongFormLoss out;
  out.grad = Eigen::VectorXd::Zero(params.size());

  // PDE residual through a forward-mode jet.
  Eigen::MatrixXd seeds = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int c = 0; c <= d; ++c) seeds(c, c) = 1.0 / net.scaling.half_width[c];
  const JetTape jet(params, net.scaling.apply(batch.collocation), seeds);
  const Eigen::Index nc = batch.collocation.cols();
  Eigen::MatrixXd value_cot = Eigen::MatrixXd::Zero(m, nc);
  std::vector<Eigen::MatrixXd> tangent_cots(d + 1, Eigen::MatrixXd::Zero(m, nc));
  const double scale = 1.0 / static_cast<double>(nc);
  for (Eigen::Index i = 0; i < nc; ++i) {
    const State u = jet.value().col(i);
    State r = jet.tangent(d).col(i);
    std::vector<Jacobian> jac(d);
    for (int a = 0; a < d; ++a) {
      jac[a] = law.flux_jacobian(u, a, guard);
      r += jac[a] * State(jet.tangent(a).col(i));
    }
    out.residual += scale * r.squaredNorm();
    const State c = 2.0 * scale * r;
    tangent_cots[d].col(i) = c;
    State ucot = State::Zero(m);
    for (int a = 0; a < d; ++a) {
      tangent_cots[a].col(i) = jac[a].transpose() * c;
      ucot += law.flux_jacobian_derivative(u, a, c, State(jet.tangent(a).col(i)), guard);
    }
    value_cot.col(i) = ucot;
  }
  out.grad += jet.backward(value_cot, tangent_cots);

  // Initial and boundary data mismatch share one batch.
  const Eigen::Index ni = batch.ic_points.cols();
  const Eigen::Index nb = batch.bc_points.cols();
  if (ni + nb > 0) {
    Eigen::MatrixXd pts(d + 1, ni + nb);
    pts << batch.ic_points, batch.bc_points;
    const ForwardTape tape(params, net.scaling.apply(pts));
    Eigen::MatrixXd cot(m, ni + nb);
    if (ni > 0) {
      const Eigen::MatrixXd diff = tape.output().leftCols(ni) - batch.ic_targets;
      out.initial = diff.squaredNorm() / static_cast<double>(ni);
      cot.leftCols(ni) = 2.0 / static_cast<double>(ni) * diff;
    }
    if (nb > 0) {
      const Eigen::MatrixXd diff = tape.output().rightCols(nb) - batch.bc_targets;
      out.boundary = diff.squaredNorm() / static_cast<double>(nb);
      cot.rightCols(nb) = 2.0 / static_cast<double>(nb) * diff;
    }
    out.grad += tape.backward(cot);
  }
  out.total = out.residual + out.initial + out.boundary;
  return out;
}

}  // namespace wepinn
