#pragma once

// Conservation laws dU/dt + div F(U) = 0 with a convex entropy pair (eta, q).

#include <Eigen/Core>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wepinn {

inline constexpr int kMaxComponents = 4;
inline constexpr int kMaxSpatialDim = 2;

/// Small state vectors live on the stack (no heap traffic in hot loops).
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxComponents, 1>;
using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0,
                               kMaxComponents, kMaxComponents>;

/// Floor applied to density/depth/pressure when training evaluates states
/// produced by an untrained network.
inline constexpr double kStateFloor = 1e-8;

/// strict: inadmissible states throw AdmissibilityError.
/// clamped: positive quantities are floored at kStateFloor before use.
enum class Guard { strict, clamped };

struct EulerParams {
  double gamma = 1.4;
};

struct SweParams {
  double g = 9.81;
};

class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;

  virtual std::string_view name() const = 0;
  virtual int components() const = 0;
  virtual int dimension() const = 0;

  virtual bool admissible(const State& u) const = 0;
  /// True when Guard::clamped would modify u before evaluating the entropy.
  virtual bool needs_clamp(const State& u) const = 0;

  /// F^{(axis)}(U).
  virtual State flux(const State& u, int axis, Guard guard = Guard::strict) const = 0;
  /// dF^{(axis)}/dU, row i = component of F, column j = component of U.
  virtual Jacobian flux_jacobian(const State& u, int axis,
                                 Guard guard = Guard::strict) const = 0;
  /// Gradient over U of  weights . (dF/dU(U) direction).
  virtual State flux_jacobian_derivative(const State& u, int axis, const State& weights,
                                         const State& direction,
                                         Guard guard = Guard::strict) const = 0;

  virtual double entropy(const State& u, Guard guard = Guard::strict) const = 0;
  virtual State entropy_gradient(const State& u, Guard guard = Guard::strict) const = 0;
  virtual double entropy_flux(const State& u, int axis, Guard guard = Guard::strict) const = 0;
  virtual State entropy_flux_gradient(const State& u, int axis,
                                      Guard guard = Guard::strict) const = 0;

  virtual State to_conservative(const State& primitive) const = 0;
  virtual State to_primitive(const State& conservative) const = 0;

  /// Smallest and largest characteristic speed along axis.
  virtual std::pair<double, double> wave_speed_bounds(const State& u, int axis) const = 0;

  virtual std::vector<std::string> conserved_names() const = 0;
  virtual std::vector<std::string> primitive_names() const = 0;
};

using LawPtr = std::shared_ptr<const ConservationLaw>;

LawPtr burgers_law();
LawPtr euler_law(EulerParams params);
LawPtr swe_law(SweParams params);

/// "burgers" | "euler" | "swe".
LawPtr make_law(std::string_view name, EulerParams euler = {}, SweParams swe = {});

}  // namespace wepinn
