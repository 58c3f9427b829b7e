#pragma once

// Relative error norms and the loss-based convergence diagnostics.

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wepinn/models.hpp"

namespace wepinn {

struct RelativeErrors {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// ||a - e|| / ||e|| in the discrete L1, L2 and max norms of equally spaced
/// samples. Throws ZeroNormError if e vanishes in any of them.
RelativeErrors relative_norms(const Eigen::VectorXd& approx, const Eigen::VectorXd& exact);

/// n cell-centred points of [x_lo, x_hi].
Eigen::VectorXd uniform_grid(double x_lo, double x_hi, int n = 1000);

using ProfileFn = std::function<State(double x, double t)>;

struct ErrorRow {
  double time = 0.0;
  int component = 0;
  std::string variable;
  RelativeErrors err;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
};

/// Per time and per component relative errors on a uniform grid. Both
/// functions return vectors of the same length as names.
ErrorReport relative_errors(const ProfileFn& approx, const ProfileFn& exact, double x_lo,
                            double x_hi, std::span<const double> times,
                            const std::vector<std::string>& names, int n_points = 1000);

/// sqrt(measure) * (sqrt(L_cons) + sqrt(L_ent)).
double truncation_bound(double l_cons, double l_ent, double spacetime_measure);

struct BoundSample {
  double l_cons = 0.0;
  double l_ent = 0.0;
  double error = 0.0;
};

struct BoundDiagnostic {
  std::vector<double> bound;          // L_cons^{1/4} + L_ent^{1/4}
  std::optional<double> correlation;  // Spearman; empty when undefined
  double k_hat = 0.0;                 // max error / bound
};

/// Needs at least five samples (ConfigError otherwise).
BoundDiagnostic l1_bound_diagnostic(std::span<const BoundSample> history);

/// Spearman rank correlation with average ranks for ties; empty if either
/// sample is constant.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

/// Sum over adjacent samples of |u_{k+1} - u_k|, components summed.
/// x must be nondecreasing; values is m x n.
double total_variation(std::span<const double> x, const Eigen::MatrixXd& values);

}  // namespace wepinn
