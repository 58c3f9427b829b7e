#pragma once

// U_theta(x, t) = (1 - tau(t)) U0(x) + tau(t) N_theta(x, t).

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <span>

#include "wepinn/models.hpp"
#include "wepinn/network.hpp"

namespace wepinn {

/// Affine map of physical (x, t) onto [-1, 1]^{d+1} before the network.
struct InputScaling {
  Eigen::VectorXd centre;
  Eigen::VectorXd half_width;

  static InputScaling identity(int coords);
  /// Maps [x_lo, x_hi] x [0, T] onto [-1, 1]^2.
  static InputScaling box_1d(double x_lo, double x_hi, double t_end);

  Eigen::MatrixXd apply(const Eigen::MatrixXd& points) const;
};

struct InitialCondition {
  std::function<State(std::span<const double>)> value;
  /// m x d spatial Jacobian; only smooth data provide it.
  std::function<Jacobian(std::span<const double>)> gradient;
};

/// tau with tau(0) = 0 and tau(T) = 1.
struct Ramp {
  std::function<double(double)> tau;
  std::function<double(double)> dtau;

  static Ramp linear(double horizon);
};

/// A network with its input scaling: N_theta(x, t) = net(scale(x, t)).
struct ScaledNetwork {
  NetworkParams params;
  InputScaling scaling;

  Eigen::MatrixXd eval_batch(const Eigen::MatrixXd& points) const;
};

struct Jet {
  State value;
  State dt;
  Jacobian dx;  // m x d
};

class Ansatz {
 public:
  Ansatz(NetworkParams params, InitialCondition initial, double horizon,
         std::optional<InputScaling> scaling = std::nullopt, std::optional<Ramp> ramp = std::nullopt);

  const NetworkParams& params() const { return network_.params; }
  NetworkParams& params() { return network_.params; }
  const ScaledNetwork& network() const { return network_; }
  const InitialCondition& initial_condition() const { return initial_; }
  const Ramp& ramp() const { return ramp_; }
  double horizon() const { return horizon_; }
  int spatial_dim() const { return network_.params.input_dim() - 1; }
  int components() const { return network_.params.output_dim(); }

  /// Requires 0 <= t <= T.
  State eval(std::span<const double> x, double t) const;

  /// Batch of space-time points (d+1 rows) to an m x B matrix.
  Eigen::MatrixXd eval_batch(const Eigen::MatrixXd& points) const;

  /// Sum_i (dU_theta(p_i)/dtheta)^T cotangent_i.
  Eigen::VectorXd backward(const Eigen::MatrixXd& points, const Eigen::MatrixXd& cotangents) const;

  /// Value and exact first derivatives in t and x (needs a smooth U0).
  Jet input_jet(std::span<const double> x, double t) const;

  /// Evaluation that keeps the network tape for one later backward pass.
  class Evaluation {
   public:
    const Eigen::MatrixXd& values() const { return values_; }
    Eigen::VectorXd backward(const Eigen::MatrixXd& cotangents) const;

   private:
    friend class Ansatz;
    Evaluation(const Ansatz& owner, const Eigen::MatrixXd& points);
    ForwardTape tape_;
    Eigen::VectorXd tau_;
    Eigen::MatrixXd values_;
  };
  Evaluation evaluate(const Eigen::MatrixXd& points) const;

 private:
  void check_time(double t) const;

  ScaledNetwork network_;
  InitialCondition initial_;
  double horizon_;
  Ramp ramp_;
};

}  // namespace wepinn
