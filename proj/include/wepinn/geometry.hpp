#pragma once

// Space-time boxes, multi-scale sampling, Gauss-Legendre rules and face
// quadrature for d in {1, 2}. The last space-time coordinate is always time.

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "wepinn/models.hpp"

namespace wepinn {

using Rng = std::mt19937_64;

/// Deterministic independent stream for (seed, stream id).
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Omega x (0, T) with Omega an axis-aligned box.
struct Domain {
  int dim = 1;
  std::array<double, kMaxSpatialDim> x_lo{};
  std::array<double, kMaxSpatialDim> x_hi{};
  double t_end = 1.0;

  void validate() const;
  double length(int axis) const { return x_hi[axis] - x_lo[axis]; }
  double spacetime_measure() const;
};

struct ControlVolume {
  int dim = 1;
  std::array<double, kMaxSpatialDim> x_lo{};
  std::array<double, kMaxSpatialDim> x_hi{};
  double t_lo = 0.0;
  double t_hi = 0.0;

  /// |D| = prod(x_hi - x_lo) * (t_hi - t_lo).
  double measure() const;
  /// Throws ContractViolation on an empty or inverted box.
  void validate() const;
  bool inside(const Domain& domain, double slack = 0.0) const;

  double lo(int coord) const { return coord < dim ? x_lo[coord] : t_lo; }
  double hi(int coord) const { return coord < dim ? x_hi[coord] : t_hi; }
};

/// Control volume from explicit 1D bounds.
ControlVolume make_box_1d(double x_lo, double x_hi, double t_lo, double t_hi);

struct SamplerConfig {
  int n_volumes = 1000;
  double lx_min = 0.0;
  double lx_max = 0.0;
  double lt_min = 0.0;
  double lt_max = 0.0;

  /// 2%..50% of the shortest axis and of T.
  static SamplerConfig defaults(const Domain& domain, int n_volumes = 1000);
  void validate(const Domain& domain) const;
};

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

inline constexpr int kMaxQuadPoints = 32;

/// Q-point Gauss-Legendre rule on [-1, 1], 1 <= Q <= 32.
QuadRule gauss_legendre(int points);

double integrate_interval(const QuadRule& rule, double a, double b,
                          const std::function<double(double)>& f);

struct Rect {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
};

double integrate_face_2d(const QuadRule& rule_x, const QuadRule& rule_y, const Rect& rect,
                         const std::function<double(double, double)>& f);

/// Sizes log-uniform in the configured ranges, centres uniform, boxes shifted
/// (never shrunk) to lie inside the domain.
std::vector<ControlVolume> sample_volumes(const Domain& domain, const SamplerConfig& config,
                                          Rng& rng);

/// One face of a control volume: coordinate `axis` (d means time) is fixed at
/// the lower (side = -1) or upper (side = +1) bound.
struct Face {
  int axis = 0;
  int side = -1;
  ControlVolume box;
  std::array<double, kMaxSpatialDim + 1> normal{};

  double fixed_value() const { return side < 0 ? box.lo(axis) : box.hi(axis); }
  double measure() const;
};

/// 2(d+1) faces; spatial axes first, then time (lower face before upper).
std::vector<Face> faces(const ControlVolume& volume);

struct FaceQuadrature {
  Eigen::MatrixXd points;        // (d+1) x n space-time points
  std::vector<double> weights;   // surface-measure weights, sum = face measure
  std::array<double, kMaxSpatialDim + 1> normal{};
  int axis = 0;
  int side = -1;
};

/// Tensor-product rule over the d free coordinates of the face.
FaceQuadrature face_quadrature(const Face& face, const QuadRule& rule);

/// Random time levels, each with sorted random spatial samples (d = 1).
struct TvdCloud {
  std::vector<double> times;
  std::vector<std::vector<double>> x;  // x[j] ascending
  int points_per_level() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
};

TvdCloud sample_tvd_cloud(const Domain& domain, int n_t, int n_x, Rng& rng);

}  // namespace wepinn
