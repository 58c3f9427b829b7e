#include "wepinn/reference.hpp"

#include <algorithm>
#include <cmath>

#include "wepinn/errors.hpp"
#include "wepinn/geometry.hpp"

namespace wepinn {

BurgersCase parse_burgers_case(const std::string& name) {
  if (name == "shock") return BurgersCase::shock;
  if (name == "rarefaction") return BurgersCase::rarefaction;
  if (name == "interaction") return BurgersCase::interaction;
  throw ConfigError("unknown Burgers case: " + name);
}

double burgers_initial(BurgersCase c, double x) {
  switch (c) {
    case BurgersCase::shock: return x <= -0.25 ? 1.0 : 0.0;
    case BurgersCase::rarefaction: return x <= -0.25 ? 0.0 : 1.0;
    case BurgersCase::interaction: return x > -0.5 && x <= 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double burgers_exact(BurgersCase c, double x, double t) {
  expects(t >= 0.0, "burgers_exact: negative time");
  if (t == 0.0) return burgers_initial(c, x);
  switch (c) {
    case BurgersCase::shock:
      return x < -0.25 + 0.5 * t ? 1.0 : 0.0;
    case BurgersCase::rarefaction: {
      const double xi = (x + 0.25) / t;
      return std::clamp(xi, 0.0, 1.0);
    }
    case BurgersCase::interaction: {
      if (x <= -0.5) return 0.0;
      const double shock = t <= 1.0 ? 0.5 * t : std::sqrt(t) - 0.5;
      if (x >= shock) return 0.0;
      return std::min(1.0, (x + 0.5) / t);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------- Euler

EulerRiemann::EulerRiemann(const State& left, const State& right, double gamma)
    : left_(left), right_(right), gamma_(gamma) {
  expects(left.size() == 3 && right.size() == 3, "EulerRiemann: states must be (rho, u, p)");
  if (!(gamma > 1.0)) throw ConfigError("EulerRiemann: gamma must exceed 1");
  if (!(left[0] > 0 && left[2] > 0 && right[0] > 0 && right[2] > 0))
    throw AdmissibilityError("EulerRiemann: density and pressure must be positive");
  c_l_ = std::sqrt(gamma * left[2] / left[0]);
  c_r_ = std::sqrt(gamma * right[2] / right[0]);
  if (2.0 / (gamma - 1.0) * (c_l_ + c_r_) <= right[1] - left[1])
    throw UnsupportedError("EulerRiemann: data generate vacuum");

  // Primitive-variable guess, floored away from zero.
  const double rho_bar = 0.5 * (left[0] + right[0]);
  const double c_bar = 0.5 * (c_l_ + c_r_);
  double p = std::max(1e-8, 0.5 * (left[2] + right[2]) - 0.5 * (right[1] - left[1]) * rho_bar * c_bar);
  for (iterations_ = 1; iterations_ <= 100; ++iterations_) {
    double dl = 0.0, dr = 0.0;
    const double f = side_function(p, left[0], left[2], c_l_, &dl) +
                     side_function(p, right[0], right[2], c_r_, &dr) + right[1] - left[1];
    double next = p - f / (dl + dr);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15 || std::abs(pressure_function(p)) < 1e-14) break;
  }
  if (iterations_ > 100) throw NumericalError("EulerRiemann: Newton iteration did not converge");
  p_star_ = p;
  double dl = 0.0, dr = 0.0;
  u_star_ = 0.5 * (left[1] + right[1]) +
            0.5 * (side_function(p, right[0], right[2], c_r_, &dr) -
                   side_function(p, left[0], left[2], c_l_, &dl));
}

double EulerRiemann::side_function(double p, double rho, double press, double c,
                                   double* df) const {
  const double g = gamma_;
  if (p > press) {
    const double a = 2.0 / ((g + 1.0) * rho);
    const double b = (g - 1.0) / (g + 1.0) * press;
    const double root = std::sqrt(a / (p + b));
    *df = root * (1.0 - 0.5 * (p - press) / (p + b));
    return (p - press) * root;
  }
  const double ratio = p / press;
  *df = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (rho * c);
  return 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

double EulerRiemann::pressure_function(double p) const {
  double dl = 0.0, dr = 0.0;
  return side_function(p, left_[0], left_[2], c_l_, &dl) +
         side_function(p, right_[0], right_[2], c_r_, &dr) + right_[1] - left_[1];
}

State EulerRiemann::sample(double xi) const {
  const double g = gamma_;
  const double gm = (g - 1.0) / (g + 1.0);
  State out(3);
  if (xi <= u_star_) {
    const double rho = left_[0], u = left_[1], p = left_[2], c = c_l_;
    if (p_star_ > p) {
      const double s = u - c * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / p + (g - 1.0) / (2.0 * g));
      if (xi <= s) {
        out << rho, u, p;
      } else {
        const double ratio = p_star_ / p;
        out << rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_;
      }
    } else {
      const double head = u - c;
      const double c_star = c * std::pow(p_star_ / p, (g - 1.0) / (2.0 * g));
      const double tail = u_star_ - c_star;
      if (xi <= head) {
        out << rho, u, p;
      } else if (xi >= tail) {
        out << rho * std::pow(p_star_ / p, 1.0 / g), u_star_, p_star_;
      } else {
        const double cf = 2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * (u - xi));
        const double uf = 2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * u + xi);
        const double rf = rho * std::pow(cf / c, 2.0 / (g - 1.0));
        out << rf, uf, p * std::pow(cf / c, 2.0 * g / (g - 1.0));
      }
    }
  } else {
    const double rho = right_[0], u = right_[1], p = right_[2], c = c_r_;
    if (p_star_ > p) {
      const double s = u + c * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / p + (g - 1.0) / (2.0 * g));
      if (xi >= s) {
        out << rho, u, p;
      } else {
        const double ratio = p_star_ / p;
        out << rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_;
      }
    } else {
      const double head = u + c;
      const double c_star = c * std::pow(p_star_ / p, (g - 1.0) / (2.0 * g));
      const double tail = u_star_ + c_star;
      if (xi >= head) {
        out << rho, u, p;
      } else if (xi <= tail) {
        out << rho * std::pow(p_star_ / p, 1.0 / g), u_star_, p_star_;
      } else {
        const double cf = 2.0 / (g + 1.0) * (c - (g - 1.0) / 2.0 * (u - xi));
        const double uf = 2.0 / (g + 1.0) * (-c + (g - 1.0) / 2.0 * u + xi);
        const double rf = rho * std::pow(cf / c, 2.0 / (g - 1.0));
        out << rf, uf, p * std::pow(cf / c, 2.0 * g / (g - 1.0));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- dam break

namespace {

// Sum of the rarefaction (left) and bore (right) wave curves minus zero
// velocity jump, as a function of the middle depth.
double dam_function(double h, double h_l, double h_r, double g, double* df) {
  const double c_l = std::sqrt(g * h_l);
  const double c = std::sqrt(g * h);
  const double fl = 2.0 * (c - c_l);
  const double dfl = g / c;
  const double k = std::sqrt(0.5 * g * (h + h_r) / (h * h_r));
  const double fr = (h - h_r) * k;
  const double dk = 0.5 * g * (1.0 / (h * h_r) - (h + h_r) / (h * h * h_r)) / (2.0 * k);
  *df = dfl + k + (h - h_r) * dk;
  return fl + fr;
}

}  // namespace

DamBreak::DamBreak(const State& left, const State& right, double g) : g_(g) {
  expects(left.size() == 2 && right.size() == 2, "DamBreak: states must be (h, u)");
  if (!(g > 0.0)) throw ConfigError("DamBreak: g must be positive");
  if (!(left[0] > 0.0 && right[0] > 0.0)) throw AdmissibilityError("DamBreak: depths must be positive");
  if (left[1] != right[1]) throw UnsupportedError("DamBreak: initial velocities must agree");
  mirrored_ = left[0] < right[0];
  h_l_ = mirrored_ ? right[0] : left[0];
  h_r_ = mirrored_ ? left[0] : right[0];
  u_0_ = left[1];
  if (h_l_ == h_r_) {
    h_m_ = h_l_;
    u_m_ = 0.0;
    shock_speed_ = 0.0;
    return;
  }
  double lo = h_r_, hi = h_l_;
  double h = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    double df = 0.0;
    const double f = dam_function(h, h_l_, h_r_, g, &df);
    if (f > 0.0) hi = h; else lo = h;
    if (std::abs(f) < 1e-14 * std::sqrt(g * h_l_) || hi - lo < 1e-15 * h_l_) {
      converged = true;
      break;
    }
    const double newton = h - f / df;
    h = newton > lo && newton < hi ? newton : 0.5 * (lo + hi);
  }
  if (!converged) throw NumericalError("DamBreak: middle-depth iteration did not converge");
  h_m_ = h;
  u_m_ = 2.0 * (std::sqrt(g * h_l_) - std::sqrt(g * h));
  shock_speed_ = u_m_ * h / (h - h_r_);
}

State DamBreak::sample_oriented(double xi) const {
  State out(2);
  if (h_l_ == h_r_) {
    out << h_l_, 0.0;
    return out;
  }
  const double c_l = std::sqrt(g_ * h_l_);
  const double c_m = std::sqrt(g_ * h_m_);
  if (xi <= -c_l) {
    out << h_l_, 0.0;
  } else if (xi <= u_m_ - c_m) {
    const double c = (2.0 * c_l - xi) / 3.0;
    out << c * c / g_, 2.0 / 3.0 * (xi + c_l);
  } else if (xi < shock_speed_) {
    out << h_m_, u_m_;
  } else {
    out << h_r_, 0.0;
  }
  return out;
}

State DamBreak::sample(double xi) const {
  // Galilean shift handles a common nonzero velocity.
  State out = sample_oriented(mirrored_ ? -(xi - u_0_) : xi - u_0_);
  if (mirrored_) out[1] = -out[1];
  out[1] += u_0_;
  return out;
}

// ---------------------------------------------------------------- setups

void RiemannSetup::validate() const {
  if (law != "euler" && law != "swe") throw ConfigError("RiemannSetup: law must be euler or swe");
  const int m = law == "euler" ? 3 : 2;
  if (left.size() != m || right.size() != m) throw ConfigError("RiemannSetup: state size");
  if (!(x_lo < x0 && x0 < x_hi)) throw ConfigError("RiemannSetup: interface outside domain");
  if (!(left[0] > 0 && right[0] > 0)) throw AdmissibilityError("RiemannSetup: inadmissible state");
  if (m == 3 && !(left[2] > 0 && right[2] > 0))
    throw AdmissibilityError("RiemannSetup: inadmissible state");
}

State sod_exact(const RiemannSetup& setup, double x, double t) {
  expects(setup.law == "euler", "sod_exact: setup is not an Euler problem");
  expects(t >= 0.0, "sod_exact: negative time");
  if (t == 0.0) return x <= setup.x0 ? setup.left : setup.right;
  const EulerRiemann rp(setup.left, setup.right, setup.gamma);
  return rp.sample((x - setup.x0) / t);
}

State stoker_exact(const RiemannSetup& setup, double x, double t) {
  expects(setup.law == "swe", "stoker_exact: setup is not a shallow-water problem");
  expects(t >= 0.0, "stoker_exact: negative time");
  if (t == 0.0) return x <= setup.x0 ? setup.left : setup.right;
  const DamBreak rp(setup.left, setup.right, setup.g);
  return rp.sample((x - setup.x0) / t);
}

// ---------------------------------------------------------------- oracle

namespace {

State burgers_godunov(const State& ul, const State& ur) {
  const double a = ul[0], b = ur[0];
  double f;
  if (a > b) {
    f = a + b > 0.0 ? 0.5 * a * a : 0.5 * b * b;
  } else if (a > 0.0) {
    f = 0.5 * a * a;
  } else if (b < 0.0) {
    f = 0.5 * b * b;
  } else {
    f = 0.0;
  }
  State out(1);
  out[0] = f;
  return out;
}

State hll(const ConservationLaw& law, const State& ul, const State& ur) {
  const auto [l_min, l_max] = law.wave_speed_bounds(ul, 0);
  const auto [r_min, r_max] = law.wave_speed_bounds(ur, 0);
  const double sl = std::min(l_min, r_min);
  const double sr = std::max(l_max, r_max);
  const State fl = law.flux(ul, 0);
  if (sl >= 0.0) return fl;
  const State fr = law.flux(ur, 0);
  if (sr <= 0.0) return fr;
  return (sr * fl - sl * fr + sl * sr * (ur - ul)) / (sr - sl);
}

}  // namespace

FvSolution fv_oracle(const ConservationLaw& law, const std::function<State(double)>& initial,
                     const FvConfig& config, std::vector<double> times) {
  if (!(config.x_hi > config.x_lo) || config.n_cells < 2) throw ConfigError("fv_oracle: bad grid");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("fv_oracle: CFL must lie in (0, 1]");
  expects(law.dimension() == 1, "fv_oracle: one spatial dimension only");
  expects(std::is_sorted(times.begin(), times.end()) && (times.empty() || times.front() >= 0.0),
          "fv_oracle: output times must be sorted and nonnegative");
  const int n = config.n_cells;
  const int m = law.components();
  const bool burgers = law.name() == "burgers";
  const double dx = (config.x_hi - config.x_lo) / n;
  if (config.boundary == FvBoundary::dirichlet)
    expects(config.left_state.size() == m && config.right_state.size() == m,
            "fv_oracle: dirichlet boundary needs both ghost states");

  FvSolution sol;
  sol.centres.resize(n);
  sol.times = times;
  const QuadRule rule = gauss_legendre(4);
  Eigen::MatrixXd u(m, n);
  for (int i = 0; i < n; ++i) {
    const double a = config.x_lo + i * dx;
    sol.centres[i] = a + 0.5 * dx;
    State avg = State::Zero(m);
    for (int q = 0; q < rule.size(); ++q)
      avg += 0.5 * rule.weights[q] * initial(a + 0.5 * dx * (rule.nodes[q] + 1.0));
    if (!law.admissible(avg)) throw AdmissibilityError("fv_oracle: inadmissible initial state");
    u.col(i) = avg;
  }

  Eigen::MatrixXd flux(m, n + 1);
  double t = 0.0;
  std::size_t next = 0;
  while (next < times.size()) {
    while (next < times.size() && times[next] <= t) {
      sol.snapshots.push_back(u);
      ++next;
    }
    if (next == times.size()) break;

    double speed = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = law.wave_speed_bounds(u.col(i), 0);
      speed = std::max({speed, std::abs(lo), std::abs(hi)});
    }
    double dt = speed > 0.0 ? config.cfl * dx / speed : times[next] - t;
    bool hit = false;
    if (t + dt >= times[next]) {
      dt = times[next] - t;
      hit = true;
    }
    for (int f = 0; f <= n; ++f) {
      State ul, ur;
      if (f == 0)
        ul = config.boundary == FvBoundary::dirichlet ? config.left_state : State(u.col(0));
      else
        ul = u.col(f - 1);
      if (f == n)
        ur = config.boundary == FvBoundary::dirichlet ? config.right_state : State(u.col(n - 1));
      else
        ur = u.col(f);
      flux.col(f) = burgers ? burgers_godunov(ul, ur) : hll(law, ul, ur);
    }
    const double ratio = dt / dx;
    for (int i = 0; i < n; ++i) {
      u.col(i) -= ratio * (flux.col(i + 1) - flux.col(i));
      if (!law.admissible(u.col(i)) || !u.col(i).allFinite())
        throw NumericalError("fv_oracle: inadmissible state during time stepping");
    }
    t = hit ? times[next] : t + dt;
  }
  return sol;
}

}  // namespace wepinn
