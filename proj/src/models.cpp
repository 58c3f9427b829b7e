#include "wepinn/models.hpp"

#include <array>
#include <cmath>
#include <string>

#include "wepinn/dual.hpp"
#include "wepinn/errors.hpp"

namespace wepinn {
namespace {

template <class T>
using Vec = std::array<T, kMaxComponents>;

// Each model supplies templated flux/entropy/entropy-flux on a raw component
// array; the adapter below derives Jacobians and gradients with dual numbers.

struct BurgersModel {
  static constexpr int m = 1;
  static constexpr std::string_view name = "burgers";

  bool admissible(const double*) const { return true; }
  bool needs_clamp(const double*) const { return false; }
  void check(const double*, Guard) const {}

  template <class T>
  void flux(const T* u, int, Guard, T* out) const {
    out[0] = 0.5 * (u[0] * u[0]);
  }
  template <class T>
  T entropy(const T* u, Guard) const {
    return 0.5 * (u[0] * u[0]);
  }
  template <class T>
  T entropy_flux(const T* u, int, Guard) const {
    return (u[0] * u[0] * u[0]) / 3.0;
  }

  void to_conservative(const double* w, double* u) const { u[0] = w[0]; }
  void to_primitive(const double* u, double* w) const { w[0] = u[0]; }
  std::pair<double, double> speeds(const double* u) const { return {u[0], u[0]}; }
  std::vector<std::string> conserved_names() const { return {"u"}; }
  std::vector<std::string> primitive_names() const { return {"u"}; }
};

struct EulerModel {
  static constexpr int m = 3;
  static constexpr std::string_view name = "euler";
  double gamma = 1.4;

  double pressure(const double* u) const {
    return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
  }
  bool admissible(const double* u) const { return u[0] > 0.0 && pressure(u) > 0.0; }
  bool needs_clamp(const double* u) const {
    if (u[0] < kStateFloor) return true;
    return pressure(u) < kStateFloor;
  }
  void check(const double* u, Guard guard) const {
    if (guard == Guard::strict && !admissible(u))
      throw AdmissibilityError("euler: state with rho <= 0 or p <= 0");
  }

  template <class T>
  void flux(const T* u, int, Guard guard, T* out) const {
    T rho = guard == Guard::clamped ? max_value(u[0], kStateFloor) : u[0];
    T vel = u[1] / rho;
    T p = (gamma - 1.0) * (u[2] - 0.5 * u[1] * vel);
    out[0] = u[1];
    out[1] = u[1] * vel + p;
    out[2] = vel * (u[2] + p);
  }

  // s = ln(p / rho^gamma) = ln p - gamma ln rho
  template <class T>
  T specific_entropy(const T* u, Guard guard) const {
    using std::log;
    T rho = u[0];
    if (guard == Guard::clamped) rho = max_value(rho, kStateFloor);
    T p = (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / rho);
    if (guard == Guard::clamped) p = max_value(p, kStateFloor);
    return log(p) - gamma * log(rho);
  }
  template <class T>
  T entropy(const T* u, Guard guard) const {
    T rho = guard == Guard::clamped ? max_value(u[0], kStateFloor) : u[0];
    return -(rho * specific_entropy(u, guard));
  }
  template <class T>
  T entropy_flux(const T* u, int, Guard guard) const {
    return -(u[1] * specific_entropy(u, guard));
  }

  void to_conservative(const double* w, double* u) const {
    if (!(w[0] > 0.0 && w[2] > 0.0))
      throw AdmissibilityError("euler: primitive state with rho <= 0 or p <= 0");
    u[0] = w[0];
    u[1] = w[0] * w[1];
    u[2] = 0.5 * w[0] * w[1] * w[1] + w[2] / (gamma - 1.0);
  }
  void to_primitive(const double* u, double* w) const {
    check(u, Guard::strict);
    w[0] = u[0];
    w[1] = u[1] / u[0];
    w[2] = pressure(u);
  }
  std::pair<double, double> speeds(const double* u) const {
    double vel = u[1] / u[0];
    double c = std::sqrt(gamma * pressure(u) / u[0]);
    return {vel - c, vel + c};
  }
  std::vector<std::string> conserved_names() const { return {"rho", "m", "E"}; }
  std::vector<std::string> primitive_names() const { return {"rho", "u", "p"}; }
};

struct SweModel {
  static constexpr int m = 2;
  static constexpr std::string_view name = "swe";
  double g = 9.81;

  bool admissible(const double* u) const { return u[0] > 0.0; }
  bool needs_clamp(const double* u) const { return u[0] < kStateFloor; }
  void check(const double* u, Guard guard) const {
    if (guard == Guard::strict && !admissible(u))
      throw AdmissibilityError("swe: state with h <= 0");
  }

  template <class T>
  void flux(const T* u, int, Guard guard, T* out) const {
    T h = guard == Guard::clamped ? max_value(u[0], kStateFloor) : u[0];
    out[0] = u[1];
    out[1] = u[1] * u[1] / h + 0.5 * g * (h * h);
  }
  template <class T>
  T entropy(const T* u, Guard guard) const {
    T h = guard == Guard::clamped ? max_value(u[0], kStateFloor) : u[0];
    return 0.5 * (u[1] * u[1] / h) + 0.5 * g * (h * h);
  }
  // (eta + g h^2 / 2) u, the flux compatible with eta.
  template <class T>
  T entropy_flux(const T* u, int, Guard guard) const {
    T h = guard == Guard::clamped ? max_value(u[0], kStateFloor) : u[0];
    return (entropy(u, guard) + 0.5 * g * (h * h)) * (u[1] / h);
  }

  void to_conservative(const double* w, double* u) const {
    if (!(w[0] > 0.0)) throw AdmissibilityError("swe: primitive state with h <= 0");
    u[0] = w[0];
    u[1] = w[0] * w[1];
  }
  void to_primitive(const double* u, double* w) const {
    check(u, Guard::strict);
    w[0] = u[0];
    w[1] = u[1] / u[0];
  }
  std::pair<double, double> speeds(const double* u) const {
    double vel = u[1] / u[0];
    double c = std::sqrt(g * u[0]);
    return {vel - c, vel + c};
  }
  std::vector<std::string> conserved_names() const { return {"h", "hu"}; }
  std::vector<std::string> primitive_names() const { return {"h", "u"}; }
};

template <class Model>
class LawAdapter final : public ConservationLaw {
 public:
  static constexpr int m = Model::m;
  using D1 = Dual<double>;
  using D2 = Dual<D1>;

  explicit LawAdapter(Model model) : model_(model) {}

  std::string_view name() const override { return Model::name; }
  int components() const override { return m; }
  int dimension() const override { return 1; }

  bool admissible(const State& u) const override {
    check_size(u);
    return model_.admissible(u.data());
  }
  bool needs_clamp(const State& u) const override {
    check_size(u);
    return model_.needs_clamp(u.data());
  }

  State flux(const State& u, int axis, Guard guard) const override {
    prepare(u, axis, guard);
    State out(m);
    model_.flux(u.data(), axis, guard, out.data());
    return out;
  }

  Jacobian flux_jacobian(const State& u, int axis, Guard guard) const override {
    prepare(u, axis, guard);
    Jacobian jac(m, m);
    for (int k = 0; k < m; ++k) {
      auto x = seed<D1>(u, k);
      Vec<D1> out{};
      model_.flux(x.data(), axis, guard, out.data());
      for (int i = 0; i < m; ++i) jac(i, k) = out[i].d;
    }
    return jac;
  }

  State flux_jacobian_derivative(const State& u, int axis, const State& weights,
                                 const State& direction, Guard guard) const override {
    prepare(u, axis, guard);
    expects(weights.size() == m && direction.size() == m,
            "flux_jacobian_derivative: vector size mismatch");
    State grad(m);
    for (int k = 0; k < m; ++k) {
      Vec<D2> x{};
      for (int j = 0; j < m; ++j) {
        x[j] = D2(D1(u[j], direction[j]), D1(j == k ? 1.0 : 0.0, 0.0));
      }
      Vec<D2> out{};
      model_.flux(x.data(), axis, guard, out.data());
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += weights[i] * out[i].d.d;
      grad[k] = acc;
    }
    return grad;
  }

  double entropy(const State& u, Guard guard) const override {
    prepare(u, 0, guard);
    return model_.entropy(u.data(), guard);
  }
  State entropy_gradient(const State& u, Guard guard) const override {
    prepare(u, 0, guard);
    State grad(m);
    for (int k = 0; k < m; ++k) {
      auto x = seed<D1>(u, k);
      grad[k] = model_.entropy(x.data(), guard).d;
    }
    return grad;
  }
  double entropy_flux(const State& u, int axis, Guard guard) const override {
    prepare(u, axis, guard);
    return model_.entropy_flux(u.data(), axis, guard);
  }
  State entropy_flux_gradient(const State& u, int axis, Guard guard) const override {
    prepare(u, axis, guard);
    State grad(m);
    for (int k = 0; k < m; ++k) {
      auto x = seed<D1>(u, k);
      grad[k] = model_.entropy_flux(x.data(), axis, guard).d;
    }
    return grad;
  }

  State to_conservative(const State& w) const override {
    check_size(w);
    State u(m);
    model_.to_conservative(w.data(), u.data());
    return u;
  }
  State to_primitive(const State& u) const override {
    check_size(u);
    State w(m);
    model_.to_primitive(u.data(), w.data());
    return w;
  }
  std::pair<double, double> wave_speed_bounds(const State& u, int axis) const override {
    prepare(u, axis, Guard::strict);
    return model_.speeds(u.data());
  }
  std::vector<std::string> conserved_names() const override {
    return model_.conserved_names();
  }
  std::vector<std::string> primitive_names() const override {
    return model_.primitive_names();
  }

 private:
  void check_size(const State& u) const {
    expects(u.size() == m, "conservation law: state has wrong component count");
  }
  void prepare(const State& u, int axis, Guard guard) const {
    check_size(u);
    expects(axis == 0, "conservation law: axis out of range for a 1D law");
    model_.check(u.data(), guard);
  }
  template <class T>
  static Vec<T> seed(const State& u, int k) {
    Vec<T> x{};
    for (int j = 0; j < m; ++j) x[j] = T(u[j], j == k ? 1.0 : 0.0);
    return x;
  }

  Model model_;
};

}  // namespace

LawPtr burgers_law() { return std::make_shared<LawAdapter<BurgersModel>>(BurgersModel{}); }

LawPtr euler_law(EulerParams params) {
  if (!(params.gamma > 1.0)) throw ConfigError("euler: gamma must exceed 1");
  return std::make_shared<LawAdapter<EulerModel>>(EulerModel{params.gamma});
}

LawPtr swe_law(SweParams params) {
  if (!(params.g > 0.0)) throw ConfigError("swe: g must be positive");
  return std::make_shared<LawAdapter<SweModel>>(SweModel{params.g});
}

LawPtr make_law(std::string_view name, EulerParams euler, SweParams swe) {
  if (name == "burgers") return burgers_law();
  if (name == "euler") return euler_law(euler);
  if (name == "swe") return swe_law(swe);
  throw ConfigError("unknown conservation law: " + std::string(name));
}

}  // namespace wepinn
