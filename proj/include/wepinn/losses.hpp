#pragma once

// Control-volume flux-balance and entropy residuals, the three WE-PINN loss
// terms with their parameter gradient, and the strong-form PINN baseline loss.

#include <Eigen/Core>
#include <functional>
#include <span>

#include "wepinn/ansatz.hpp"
#include "wepinn/geometry.hpp"
#include "wepinn/models.hpp"

namespace wepinn {

/// Space-time solution (x, t) -> U.
using SolutionFn = std::function<State(std::span<const double>, double)>;

enum class BoundaryMode { dirichlet_state, network_value };

/// On dirichlet_state, spatial faces lying on the domain boundary integrate the
/// prescribed far-field state instead of the solution.
struct BoundaryCondition {
  BoundaryMode mode = BoundaryMode::network_value;
  Domain domain;
  SolutionFn state;

  bool replaces(const Face& face) const;
};

/// R(D) = integral over dD of (U n_t + F(U) . n_x) dS, one entry per component.
State weak_residual(const SolutionFn& u, const ConservationLaw& law, const ControlVolume& volume,
                    const QuadRule& rule, const BoundaryCondition* bc = nullptr,
                    Guard guard = Guard::strict);

/// E(D) = integral over dD of (eta(U) n_t + q(U) . n_x) dS.
double entropy_residual(const SolutionFn& u, const ConservationLaw& law,
                        const ControlVolume& volume, const QuadRule& rule,
                        const BoundaryCondition* bc = nullptr, Guard guard = Guard::strict);

struct LossBreakdown {
  double cons = 0.0;
  double ent = 0.0;
  double tvd = 0.0;
  double total = 0.0;
  Eigen::VectorXd grad;
  /// Quadrature/cloud points whose state needed the admissibility floor.
  long clamped_points = 0;
  int tvd_level = -1;
};

inline constexpr double kLambdaCons = 1.0;
inline constexpr double kLambdaEnt = 1.0;
inline constexpr double kLambdaTvd = 1.0;

/// Evaluates all loss terms from one batched network pass. Per-point work is
/// accumulated in volume order, so results are reproducible bit for bit.
class WeakLossEvaluator {
 public:
  WeakLossEvaluator(const ConservationLaw& law, QuadRule rule, BoundaryCondition bc = {},
                    Guard guard = Guard::clamped);

  /// cloud may be null (tvd = 0). Throws ConfigError for an empty volume list.
  LossBreakdown evaluate(const Ansatz& ansatz, std::span<const ControlVolume> volumes,
                         const TvdCloud* cloud, bool with_gradient) const;

  /// Per-volume residuals (R_k, E_k) of the ansatz.
  std::vector<std::pair<State, double>> residuals(const Ansatz& ansatz,
                                                  std::span<const ControlVolume> volumes) const;

  const QuadRule& rule() const { return rule_; }

 private:
  const ConservationLaw* law_;
  QuadRule rule_;
  BoundaryCondition bc_;
  Guard guard_;
};

double cons_loss(const Ansatz& ansatz, const ConservationLaw& law,
                 std::span<const ControlVolume> volumes, const QuadRule& rule,
                 const BoundaryCondition& bc = {});
double ent_loss(const Ansatz& ansatz, const ConservationLaw& law,
                std::span<const ControlVolume> volumes, const QuadRule& rule,
                const BoundaryCondition& bc = {});
/// max_j sum_k |U(x_{k+1}, t_j) - U(x_k, t_j)|, components summed.
double tvd_loss(const Ansatz& ansatz, const TvdCloud& cloud);
LossBreakdown total_loss(const Ansatz& ansatz, const ConservationLaw& law,
                         std::span<const ControlVolume> volumes, const TvdCloud& cloud,
                         const QuadRule& rule, const BoundaryCondition& bc = {});

/// Collocation data for the strong-form baseline (points are (d+1) x n).
struct StrongFormBatch {
  Eigen::MatrixXd collocation;
  Eigen::MatrixXd ic_points;
  Eigen::MatrixXd ic_targets;
  Eigen::MatrixXd bc_points;
  Eigen::MatrixXd bc_targets;
};

struct StrongFormLoss {
  double residual = 0.0;
  double initial = 0.0;
  double boundary = 0.0;
  double total = 0.0;
  Eigen::VectorXd grad;
};

/// mean |u_t + sum_a A_a(u) u_{x_a}|^2 + mean |u(x,0) - U0|^2 + mean |u - g|^2.
StrongFormLoss strong_pinn_loss(const ScaledNetwork& net, const ConservationLaw& law,
                                const StrongFormBatch& batch, Guard guard = Guard::clamped);

}  // namespace wepinn
