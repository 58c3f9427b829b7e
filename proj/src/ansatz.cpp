#include "wepinn/ansatz.hpp"

#include "wepinn/errors.hpp"

namespace wepinn {

InputScaling InputScaling::identity(int coords) {
  return {Eigen::VectorXd::Zero(coords), Eigen::VectorXd::Ones(coords)};
}

InputScaling InputScaling::box_1d(double x_lo, double x_hi, double t_end) {
  InputScaling s;
  s.centre = Eigen::Vector2d(0.5 * (x_lo + x_hi), 0.5 * t_end);
  s.half_width = Eigen::Vector2d(0.5 * (x_hi - x_lo), 0.5 * t_end);
  return s;
}

Eigen::MatrixXd InputScaling::apply(const Eigen::MatrixXd& points) const {
  expects(points.rows() == centre.size(), "input scaling: coordinate count mismatch");
  return (points.colwise() - centre).array().colwise() / half_width.array();
}

Ramp Ramp::linear(double horizon) {
  expects(horizon > 0.0, "ramp: horizon must be positive");
  return {[horizon](double t) { return t / horizon; }, [horizon](double) { return 1.0 / horizon; }};
}

Eigen::MatrixXd ScaledNetwork::eval_batch(const Eigen::MatrixXd& points) const {
  return forward_batch(params, scaling.apply(points));
}

Ansatz::Ansatz(NetworkParams params, InitialCondition initial, double horizon,
               std::optional<InputScaling> scaling, std::optional<Ramp> ramp)
    : network_{std::move(params), InputScaling{}},
      initial_(std::move(initial)),
      horizon_(horizon),
      ramp_(ramp ? std::move(*ramp) : Ramp::linear(horizon)) {
  expects(horizon_ > 0.0, "ansatz: horizon must be positive");
  expects(static_cast<bool>(initial_.value), "ansatz: missing initial condition");
  network_.scaling = scaling ? std::move(*scaling) : InputScaling::identity(network_.params.input_dim());
  expects(network_.scaling.centre.size() == network_.params.input_dim(),
          "ansatz: scaling does not match network input");
}

void Ansatz::check_time(double t) const {
  expects(t >= 0.0 && t <= horizon_, "ansatz: time outside [0, T]");
}

State Ansatz::eval(std::span<const double> x, double t) const {
  check_time(t);
  const int d = spatial_dim();
  expects(static_cast<int>(x.size()) == d, "ansatz: spatial dimension mismatch");
  Eigen::MatrixXd p(d + 1, 1);
  for (int a = 0; a < d; ++a) p(a, 0) = x[a];
  p(d, 0) = t;
  return eval_batch(p).col(0);
}

Ansatz::Evaluation::Evaluation(const Ansatz& owner, const Eigen::MatrixXd& points)
    : tape_(owner.network_.params, owner.network_.scaling.apply(points)) {
  const int d = owner.spatial_dim();
  const Eigen::Index n = points.cols();
  tau_.resize(n);
  values_ = tape_.output();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = points(d, i);
    owner.check_time(t);
    const double tau = owner.ramp_.tau(t);
    tau_[i] = tau;
    const State u0 = owner.initial_.value(std::span<const double>(points.col(i).data(), d));
    expects(u0.size() == values_.rows(), "ansatz: initial condition has wrong size");
    values_.col(i) = (1.0 - tau) * u0 + tau * values_.col(i);
  }
}

Eigen::VectorXd Ansatz::Evaluation::backward(const Eigen::MatrixXd& cotangents) const {
  expects(cotangents.rows() == values_.rows() && cotangents.cols() == values_.cols(),
          "ansatz backward: cotangent shape mismatch");
  return tape_.backward(cotangents * tau_.asDiagonal());
}

Ansatz::Evaluation Ansatz::evaluate(const Eigen::MatrixXd& points) const {
  expects(points.rows() == spatial_dim() + 1, "ansatz: point dimension mismatch");
  return Evaluation(*this, points);
}

Eigen::MatrixXd Ansatz::eval_batch(const Eigen::MatrixXd& points) const {
  return evaluate(points).values();
}

Eigen::VectorXd Ansatz::backward(const Eigen::MatrixXd& points,
                                 const Eigen::MatrixXd& cotangents) const {
  expects(points.cols() == cotangents.cols(), "ansatz backward: batch and cotangent lengths differ");
  if (points.cols() == 0) return Eigen::VectorXd::Zero(params().size());
  return evaluate(points).backward(cotangents);
}

Jet Ansatz::input_jet(std::span<const double> x, double t) const {
  check_time(t);
  const int d = spatial_dim();
  expects(static_cast<int>(x.size()) == d, "ansatz: spatial dimension mismatch");
  expects(static_cast<bool>(initial_.gradient), "input_jet: initial condition is not differentiable");
  Eigen::MatrixXd p(d + 1, 1);
  for (int a = 0; a < d; ++a) p(a, 0) = x[a];
  p(d, 0) = t;
  // Seeds are the derivatives of the scaled inputs along each physical axis.
  Eigen::MatrixXd seeds = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int c = 0; c <= d; ++c) seeds(c, c) = 1.0 / network_.scaling.half_width[c];
  JetTape jet(network_.params, network_.scaling.apply(p), seeds);

  const double tau = ramp_.tau(t);
  const double dtau = ramp_.dtau(t);
  const State u0 = initial_.value(x);
  const Jacobian du0 = initial_.gradient(x);
  const State net = jet.value().col(0);

  Jet out;
  out.value = (1.0 - tau) * u0 + tau * net;
  out.dt = dtau * (net - u0) + tau * State(jet.tangent(d).col(0));
  out.dx.resize(u0.size(), d);
  for (int a = 0; a < d; ++a) out.dx.col(a) = (1.0 - tau) * du0.col(a) + tau * jet.tangent(a).col(0);
  return out;
}

}  // namespace wepinn
