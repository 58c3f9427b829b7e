#pragma once

// Exact entropy solutions of the benchmark problems and a first-order
// finite-volume oracle.

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "wepinn/models.hpp"

namespace wepinn {

enum class BurgersCase { shock, rarefaction, interaction };

BurgersCase parse_burgers_case(const std::string& name);
/// Initial data of each Burgers case at x.
double burgers_initial(BurgersCase c, double x);
double burgers_exact(BurgersCase c, double x, double t);

/// Star state of the gamma-law Riemann problem; states are primitive (rho, u, p).
class EulerRiemann {
 public:
  EulerRiemann(const State& left, const State& right, double gamma);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  int iterations() const { return iterations_; }
  /// f_L(p) + f_R(p) + (u_R - u_L).
  double pressure_function(double p) const;

  /// Primitive state at similarity coordinate xi = (x - x0) / t.
  State sample(double xi) const;

 private:
  double side_function(double p, double rho, double press, double c, double* df) const;

  State left_, right_;
  double gamma_;
  double c_l_, c_r_;
  double p_star_ = 0.0, u_star_ = 0.0;
  int iterations_ = 0;
};

/// Shallow-water Riemann problem with a left rarefaction and a right bore
/// (h_l >= h_r, equal velocities). Mirrored data are handled by reflection.
class DamBreak {
 public:
  DamBreak(const State& left, const State& right, double g);

  double h_middle() const { return h_m_; }
  double u_middle() const { return u_m_; }
  double shock_speed() const { return shock_speed_; }
  /// Primitive (h, u) at xi = (x - x0) / t.
  State sample(double xi) const;

 private:
  State sample_oriented(double xi) const;

  double g_;
  bool mirrored_ = false;
  double h_l_, h_r_, u_0_;
  double h_m_ = 0.0, u_m_ = 0.0, shock_speed_ = 0.0;
};

struct RiemannSetup {
  std::string law;  // "euler" or "swe"
  State left;       // primitive
  State right;      // primitive
  double x0 = 0.5;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_end = 1.0;
  double gamma = 1.4;
  double g = 9.81;

  void validate() const;
};

/// Primitive (rho, u, p); returns the initial data at t = 0.
State sod_exact(const RiemannSetup& setup, double x, double t);
/// Primitive (h, u); returns the initial data at t = 0.
State stoker_exact(const RiemannSetup& setup, double x, double t);

enum class FvBoundary { transmissive, dirichlet };

struct FvConfig {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int n_cells = 4000;
  double cfl = 0.45;
  FvBoundary boundary = FvBoundary::transmissive;
  /// Ghost states for the dirichlet boundary (conservative).
  State left_state;
  State right_state;
};

struct FvSolution {
  Eigen::VectorXd centres;
  std::vector<double> times;
  /// One m x n_cells matrix of cell averages per requested time.
  std::vector<Eigen::MatrixXd> snapshots;
};

/// Godunov-type scheme: exact Riemann flux for Burgers, HLL otherwise.
/// initial returns conservative states; its cell averages use 4-point Gauss.
FvSolution fv_oracle(const ConservationLaw& law, const std::function<State(double)>& initial,
                     const FvConfig& config, std::vector<double> times);

}  // namespace wepinn
