#include "wepinn/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <random>
#include <sstream>

#include "wepinn/ansatz.hpp"
#include "wepinn/losses.hpp"
#include "wepinn/models.hpp"
#include "wepinn/network.hpp"
#include "wepinn/optim.hpp"
#include "wepinn/reference.hpp"

namespace wepinn {
namespace {

struct Suite {
  const ValidationOptions& opts;
  std::vector<PropertyResult> results;

  QuadRule rule(int q) const {
    QuadRule r = gauss_legendre(q);
    if (opts.quadrature_hook) opts.quadrature_hook(r);
    return r;
  }

  // Passes when measured <= threshold.
  void at_most(const std::string& name, double measured, double threshold, std::string detail = {}) {
    results.push_back({name, measured <= threshold, measured, threshold, std::move(detail)});
  }
  void at_least(const std::string& name, double measured, double threshold, std::string detail = {}) {
    results.push_back({name, measured >= threshold, measured, threshold, std::move(detail)});
  }
};

State vec(std::initializer_list<double> v) {
  State s(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) s[i++] = x;
  return s;
}

void quadrature(Suite& s) {
  const QuadRule r = s.rule(6);
  double worst = 0.0;
  for (int k = 0; k <= 11; ++k) {
    double sum = 0.0;
    for (int i = 0; i < r.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
    worst = std::max(worst, std::abs(sum - exact));
  }
  s.at_most("quadrature-exactness-1d", worst, 1e-12, "Q=6, monomials up to degree 11 on [-1,1]");
  worst = 0.0;
  for (int a = 0; a <= 11; ++a)
    for (int b = 0; b <= 11; ++b) {
      const double v = integrate_face_2d(r, r, Rect{0.0, 1.0, 0.0, 1.0},
                                         [&](double x, double y) { return std::pow(x, a) * std::pow(y, b); });
      worst = std::max(worst, std::abs(v - 1.0 / ((a + 1) * (b + 1))));
    }
  s.at_most("quadrature-exactness-2d", worst, 1e-12, "Q=6 tensor rule on [0,1]^2");
}

std::vector<ControlVolume> random_boxes(int n, double x_lo, double x_hi, double t_end, std::uint64_t seed) {
  Domain d;
  d.x_lo[0] = x_lo;
  d.x_hi[0] = x_hi;
  d.t_end = t_end;
  Rng rng = make_rng(seed, 0);
  return sample_volumes(d, SamplerConfig::defaults(d, n), rng);
}

void nullity(Suite& s) {
  const QuadRule r = s.rule(6);
  const std::vector<std::pair<LawPtr, State>> cases = {
      {burgers_law(), vec({0.7})}, {euler_law({}), vec({1.2, 0.3, 2.5})}, {swe_law({}), vec({2.0, -0.4})}};
  for (const auto& [law, c] : cases) {
    const State state = c;
    const SolutionFn u = [state](std::span<const double>, double) { return state; };
    double worst = 0.0;
    for (const ControlVolume& v : random_boxes(100, -1.0, 1.0, 1.0, 11)) {
      worst = std::max(worst, weak_residual(u, *law, v, r).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(entropy_residual(u, *law, v, r)));
    }
    s.at_most("constant-state-nullity-" + std::string(law->name()), worst, 1e-12, "100 random volumes");
  }
}

void entropy_pairs(Suite& s) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<std::pair<LawPtr, std::function<State()>>> cases = {
      {burgers_law(), [&] { return vec({4.0 * unit(rng) - 2.0}); }},
      {euler_law({}), [&] {
         const double rho = 0.2 + 2.0 * unit(rng), u = 2.0 * unit(rng) - 1.0, p = 0.2 + 2.0 * unit(rng);
         return vec({rho, rho * u, p / 0.4 + 0.5 * rho * u * u});
       }},
      {swe_law({}), [&] {
         const double h = 0.2 + 3.0 * unit(rng), u = 2.0 * unit(rng) - 1.0;
         return vec({h, h * u});
       }}};
  for (const auto& [law, draw] : cases) {
    double compat = 0.0;
    double convexity = 0.0;
    for (int k = 0; k < 50; ++k) {
      const State u = draw();
      const State lhs = law->entropy_flux_gradient(u, 0);
      const State rhs = law->flux_jacobian(u, 0).transpose() * law->entropy_gradient(u);
      // Central differences of q as an independent check of the analytic chain.
      State fd(u.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(u[i]));
        State a = u, b = u;
        a[i] += h;
        b[i] -= h;
        fd[i] = (law->entropy_flux(a, 0) - law->entropy_flux(b, 0)) / (2.0 * h);
      }
      compat = std::max(compat, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
      compat = std::max(compat, (fd - rhs).norm() / std::max(1.0, rhs.norm()));
      const State w = draw();
      const double mid = law->entropy(0.5 * (u + w));
      convexity = std::max(convexity, mid - 0.5 * (law->entropy(u) + law->entropy(w)));
    }
    const std::string n(law->name());
    s.at_most("entropy-compatibility-" + n, compat, 1e-6);
    s.at_most("entropy-convexity-" + n, convexity, 1e-12, "midpoint excess over 50 segments");
  }
}

// Boxes of side in [lo, hi] containing the line x = -0.25 + t/2 somewhere inside.
std::vector<ControlVolume> straddling(int n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ControlVolume> out;
  while (static_cast<int>(out.size()) < n) {
    const double lx = lo + (hi - lo) * unit(rng), lt = lo + (hi - lo) * unit(rng);
    const double t0 = (1.0 - lt) * unit(rng);
    const double tm = t0 + 0.5 * lt;
    const double xs = -0.25 + 0.5 * tm;
    const double x0 = xs - lx * (0.2 + 0.6 * unit(rng));
    out.push_back(make_box_1d(x0, x0 + lx, t0, t0 + lt));
  }
  return out;
}

// True when the line x = x0 + speed * t passes through the box.
bool crosses(const ControlVolume& v, double x0, double speed) {
  const double a = x0 + speed * v.t_lo, b = x0 + speed * v.t_hi;
  return std::max(a, b) > v.x_lo[0] && std::min(a, b) < v.x_hi[0];
}

struct WaveLine {
  double x0;
  double speed;
};

// Solution-size scales for the absolute tolerances (1 for the Burgers cases).
struct Scales {
  double state = 1.0;
  double entropy = 1.0;
};

Scales scales_of(const ConservationLaw& law, std::initializer_list<State> states) {
  Scales sc{0.0, 0.0};
  for (const State& u : states) {
    sc.state = std::max({sc.state, u.cwiseAbs().maxCoeff(), law.flux(u, 0).cwiseAbs().maxCoeff()});
    sc.entropy = std::max({sc.entropy, std::abs(law.entropy(u)), std::abs(law.entropy_flux(u, 0))});
  }
  sc.state = std::max(sc.state, 1.0);
  sc.entropy = std::max(sc.entropy, 1.0);
  return sc;
}

// Three families of volumes with sides in [0.05, 0.1] of each extent:
//  clear     - no wave passes through: residuals vanish up to rounding;
//  straddle  - a shock crosses at mid-height: Rankine-Hugoniot and entropy sign;
//  any       - arbitrary placement: quadrature-limited (fans and contacts have
//              zero entropy production, so only quadrature error remains there).
void exact_solution_residuals(Suite& s, const std::string& name, const ConservationLaw& law,
                              const SolutionFn& u, double x_lo, double x_hi, double t_end,
                              const std::vector<WaveLine>& shocks, const std::vector<WaveLine>& neutral,
                              Scales sc, bool strict_shock_entropy = true) {
  const QuadRule r = s.rule(32);
  const double lx = x_hi - x_lo;
  std::mt19937_64 rng(std::hash<std::string>{}(name) & 0xffff);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double centre_x, double centre_t) {
    const double wx = (0.05 + 0.05 * unit(rng)) * lx, wt = (0.05 + 0.05 * unit(rng)) * t_end;
    double t0 = std::clamp(centre_t - 0.5 * wt, 0.0, t_end - wt);
    double x0 = std::clamp(centre_x - wx * (0.2 + 0.6 * unit(rng)), x_lo, x_hi - wx);
    return make_box_1d(x0, x0 + wx, t0, t0 + wt);
  };
  auto crossed = [&](const ControlVolume& v) {
    auto hit = [&](const WaveLine& w) { return crosses(v, w.x0, w.speed); };
    return std::any_of(shocks.begin(), shocks.end(), hit) || std::any_of(neutral.begin(), neutral.end(), hit);
  };

  double clear_r = 0.0, clear_e = -1e300;
  int clear = 0;
  for (int k = 0; clear < 100 && k < 100000; ++k) {
    const ControlVolume v = draw(x_lo + lx * unit(rng), t_end * unit(rng));
    if (crossed(v)) continue;
    clear_r = std::max(clear_r, weak_residual(u, law, v, r).cwiseAbs().maxCoeff());
    clear_e = std::max(clear_e, entropy_residual(u, law, v, r));
    ++clear;
  }
  s.at_most("exact-clear-weak-" + name, clear_r / sc.state, 1e-10, std::to_string(clear) + " volumes");
  s.at_most("exact-clear-entropy-" + name, clear_e / sc.entropy, 1e-6);

  double rh = 0.0, sign = -1e300;
  int straddled = 0;
  for (const WaveLine& w : shocks) {
    for (int k = 0; k < 50; ++k) {
      const double tc = t_end * (0.1 + 0.85 * unit(rng));
      const ControlVolume v = draw(w.x0 + w.speed * tc, tc);
      const double xs = w.x0 + w.speed * 0.5 * (v.t_lo + v.t_hi);
      if (xs <= v.x_lo[0] || xs >= v.x_hi[0]) continue;
      if (std::any_of(neutral.begin(), neutral.end(), [&](const WaveLine& n) { return crosses(v, n.x0, n.speed); }))
        continue;
      rh = std::max(rh, weak_residual(u, law, v, r).cwiseAbs().maxCoeff());
      sign = std::max(sign, entropy_residual(u, law, v, r));
      ++straddled;
    }
  }
  if (straddled > 0) {
    s.at_most("exact-shock-weak-" + name, rh / sc.state, 1e-2, std::to_string(straddled) + " straddling volumes");
    // A weak shock dissipates less than the step quadrature error at Q = 32.
    if (strict_shock_entropy)
      s.at_most("exact-shock-entropy-" + name, sign / sc.entropy, 1e-6);
    else
      s.at_most("exact-shock-entropy-" + name, sign / sc.entropy, 1e-2, "weak shock, quadrature-limited");
  }

  double any_r = 0.0, any_e = -1e300;
  for (int k = 0; k < 100; ++k) {
    const ControlVolume v = draw(x_lo + lx * unit(rng), t_end * unit(rng));
    any_r = std::max(any_r, weak_residual(u, law, v, r).cwiseAbs().maxCoeff());
    any_e = std::max(any_e, entropy_residual(u, law, v, r));
  }
  s.at_most("exact-any-weak-" + name, any_r / sc.state, 1e-2, "100 volumes, quadrature-limited");
  s.at_most("exact-any-entropy-" + name, any_e / sc.entropy, 1e-2, "100 volumes, quadrature-limited");
}

void shocks(Suite& s) {
  const QuadRule r = s.rule(32);
  const LawPtr law = burgers_law();
  const SolutionFn shock = [](std::span<const double> x, double t) {
    return vec({burgers_exact(BurgersCase::shock, x[0], t)});
  };
  const SolutionFn expansion = [](std::span<const double> x, double t) {
    return vec({x[0] < -0.25 + 0.5 * t ? 0.0 : 1.0});
  };
  double worst_r = 0.0, worst_e = -1e300;
  for (const ControlVolume& v : straddling(50, 0.05, 0.1, 21)) {
    worst_r = std::max(worst_r, std::abs(weak_residual(shock, *law, v, r)[0]));
    worst_e = std::max(worst_e, entropy_residual(shock, *law, v, r));
  }
  double least = 1e300;
  for (const ControlVolume& v : straddling(50, 0.1, 0.2, 22))
    least = std::min(least, entropy_residual(expansion, *law, v, r));
  s.at_most("rankine-hugoniot", worst_r, 1e-2, "exact Burgers shock, 50 straddling boxes, Q=32");
  s.at_most("entropy-sign-shock", worst_e, 1e-6);
  s.at_least("entropy-sign-expansion", least, 1e-3, "expansion shock, sides in [0.1, 0.2]");

  const char* names[] = {"burgers-shock", "burgers-rarefaction", "burgers-interaction"};
  const std::vector<WaveLine> shock_lines[] = {{{-0.25, 0.5}}, {}, {{0.0, 0.5}}};
  const std::vector<WaveLine> neutral[] = {{}, {{-0.25, 0.0}, {-0.25, 1.0}}, {{-0.5, 0.0}, {-0.5, 1.0}}};
  for (int c = 0; c < 3; ++c) {
    const auto bc = static_cast<BurgersCase>(c);
    const SolutionFn u = [bc](std::span<const double> x, double t) { return vec({burgers_exact(bc, x[0], t)}); };
    // The interaction shock bends after t = 1, outside the horizon used here.
    exact_solution_residuals(s, names[c], *law, u, -1.0, 1.0, 1.0, shock_lines[c], neutral[c], {});
  }

  const LawPtr euler = euler_law({});
  const RiemannSetup sod{"euler", vec({1.0, 0.0, 1.0}), vec({0.125, 0.0, 0.1}), 0.5, 0.0, 1.0, 0.2};
  const EulerRiemann rp(sod.left, sod.right, 1.4);
  const double c_l = std::sqrt(1.4), c_star = c_l * std::pow(rp.p_star(), 0.4 / 2.8);
  const double c_r = std::sqrt(1.4 * 0.1 / 0.125);
  const double sod_shock = c_r * std::sqrt(2.4 / 2.8 * rp.p_star() / 0.1 + 0.4 / 2.8);
  exact_solution_residuals(
      s, "sod", *euler,
      [&](std::span<const double> x, double t) { return euler->to_conservative(sod_exact(sod, x[0], t)); },
      0.0, 1.0, 0.2, {{0.5, sod_shock}}, {{0.5, -c_l}, {0.5, rp.u_star() - c_star}, {0.5, rp.u_star()}},
      scales_of(*euler, {euler->to_conservative(sod.left), euler->to_conservative(sod.right)}), false);

  const LawPtr swe = swe_law({});
  const RiemannSetup dam{"swe", vec({5.0, 0.0}), vec({1.0, 0.0}), 0.5, 0.0, 1.0, 0.12};
  const DamBreak db(dam.left, dam.right, 9.81);
  exact_solution_residuals(
      s, "stoker", *swe,
      [&](std::span<const double> x, double t) { return swe->to_conservative(stoker_exact(dam, x[0], t)); },
      0.0, 1.0, 0.12, {{0.5, db.shock_speed()}},
      {{0.5, -std::sqrt(9.81 * 5.0)}, {0.5, db.u_middle() - std::sqrt(9.81 * db.h_middle())}},
      scales_of(*swe, {swe->to_conservative(dam.left), swe->to_conservative(dam.right)}));
}

InitialCondition smooth_burgers() {
  InitialCondition ic;
  ic.value = [](std::span<const double> x) { return vec({0.5 + 0.25 * std::sin(std::numbers::pi * x[0])}); };
  ic.gradient = [](std::span<const double> x) {
    Jacobian j(1, 1);
    j(0, 0) = 0.25 * std::numbers::pi * std::cos(std::numbers::pi * x[0]);
    return j;
  };
  return ic;
}

NetworkParams random_net(int in, int out, int width, std::uint64_t seed) {
  NetworkConfig c;
  c.input_dim = in;
  c.output_dim = out;
  c.hidden_layers = 1;
  c.hidden_width = width;
  NetworkParams p = init_network(c, seed);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> n(0.0, 0.3);
  Eigen::VectorXd f = p.flat();
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] += n(rng);
  p.set_flat(f);
  return p;
}

void gradients(Suite& s) {
  const LawPtr law = burgers_law();
  Domain dom;
  dom.x_lo[0] = -1.0;
  dom.x_hi[0] = 1.0;
  dom.t_end = 1.0;
  Ansatz a(random_net(2, 1, 6, 3), smooth_burgers(), 1.0, InputScaling::box_1d(-1.0, 1.0, 1.0));
  Rng rng = make_rng(9, 0);
  const auto volumes = sample_volumes(dom, SamplerConfig::defaults(dom, 20), rng);
  const TvdCloud cloud = sample_tvd_cloud(dom, 4, 16, rng);
  const WeakLossEvaluator eval(*law, s.rule(6));
  const LossBreakdown l = eval.evaluate(a, volumes, &cloud, true);
  Eigen::VectorXd fd(l.grad.size());
  const Eigen::VectorXd theta = a.params().flat();
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double h = 1e-6;
    Eigen::VectorXd tp = theta, tm = theta;
    tp[i] += h;
    tm[i] -= h;
    a.params().set_flat(tp);
    const double fp = eval.evaluate(a, volumes, &cloud, false).total;
    a.params().set_flat(tm);
    const double fm = eval.evaluate(a, volumes, &cloud, false).total;
    fd[i] = (fp - fm) / (2.0 * h);
  }
  a.params().set_flat(theta);
  std::ostringstream detail;
  detail << "P=" << theta.size();
  s.at_most("loss-gradient", (l.grad - fd).norm() / fd.norm(), 1e-4, detail.str());

  double worst = 0.0;
  std::mt19937_64 pr(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const double x = 2.0 * unit(pr) - 1.0, t = 0.05 + 0.9 * unit(pr);
    const Jet j = a.input_jet(std::span<const double>(&x, 1), t);
    const double h = 1e-5;
    const double xp = x + h, xm = x - h;
    const double dx = (a.eval(std::span<const double>(&xp, 1), t)[0] - a.eval(std::span<const double>(&xm, 1), t)[0]) / (2 * h);
    const double dt = (a.eval(std::span<const double>(&x, 1), t + h)[0] - a.eval(std::span<const double>(&x, 1), t - h)[0]) / (2 * h);
    worst = std::max(worst, std::abs(j.dx(0, 0) - dx) / std::max(1.0, std::abs(dx)));
    worst = std::max(worst, std::abs(j.dt[0] - dt) / std::max(1.0, std::abs(dt)));
  }
  s.at_most("input-jet", worst, 1e-6);
}

void optimizers(Suite& s) {
  Eigen::MatrixXd m(5, 5);
  m << 4, 1, 0, 0, 0, 1, 3, 1, 0, 0, 0, 1, 2, 0.5, 0, 0, 0, 0.5, 1.5, 0.2, 0, 0, 0, 0.2, 1;
  const ObjectiveFn quad = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = m * x;
    return 0.5 * x.dot(m * x);
  };
  const LbfgsResult q = lbfgs_run({}, quad, Eigen::VectorXd::Ones(5), 30);
  s.at_most("lbfgs-quadratic", q.best_value, 1e-8, "5-dim SPD, 30 iterations");
  const ObjectiveFn rosen = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
    g.resize(2);
    g << -2.0 * a - 400.0 * x[0] * b, 200.0 * b;
    return a * a + 100.0 * b * b;
  };
  const LbfgsResult r = lbfgs_run({}, rosen, Eigen::Vector2d(-1.2, 1.0), 200);
  s.at_most("lbfgs-rosenbrock", r.best_value, 1e-8, "200 iterations");
  AdamConfig cfg;
  cfg.lr = 0.1;
  AdamState st;
  Eigen::VectorXd th = Eigen::VectorXd::Ones(1);
  for (int k = 0; k < 500; ++k) adam_step(cfg, st, th, 2.0 * th);
  s.at_most("adam-quadratic", th.squaredNorm(), 1e-3, "f = theta^2, 500 steps");
}

void riemann(Suite& s) {
  const EulerRiemann rp(vec({1.0, 0.0, 1.0}), vec({0.125, 0.0, 0.1}), 1.4);
  s.at_most("sod-star-pressure", std::abs(rp.p_star() - 0.30313), 1e-4);
  s.at_most("sod-star-velocity", std::abs(rp.u_star() - 0.92745), 1e-4);
  s.at_most("sod-pressure-residual", std::abs(rp.pressure_function(rp.p_star())), 1e-12);
}

double l1_against(const FvSolution& sol, const std::function<double(double)>& exact, int comp,
                  double lo, double hi) {
  const double dx = sol.centres[1] - sol.centres[0];
  double e = 0.0;
  for (Eigen::Index i = 0; i < sol.centres.size(); ++i)
    if (sol.centres[i] > lo && sol.centres[i] < hi) e += dx * std::abs(sol.snapshots.back()(comp, i) - exact(sol.centres[i]));
  return e;
}

void oracles(Suite& s) {
  {
    const LawPtr law = burgers_law();
    FvConfig cfg;
    cfg.x_lo = -1.0;
    cfg.x_hi = 1.0;
    for (BurgersCase c : {BurgersCase::shock, BurgersCase::rarefaction, BurgersCase::interaction}) {
      const auto sol = fv_oracle(*law, [c](double x) { return vec({burgers_initial(c, x)}); }, cfg, {1.0});
      const double e = l1_against(sol, [c](double x) { return burgers_exact(c, x, 1.0); }, 0, -1.0, 1.0);
      const char* names[] = {"shock", "rarefaction", "interaction"};
      s.at_most(std::string("oracle-burgers-") + names[static_cast<int>(c)], e, 5e-3, "n=4000, t=1");
    }
  }
  {
    const LawPtr law = euler_law({});
    RiemannSetup setup{"euler", vec({1.0, 0.0, 1.0}), vec({0.125, 0.0, 0.1}), 0.5, 0.0, 1.0, 0.2};
    FvConfig cfg;
    const auto sol = fv_oracle(*law, [&](double x) { return law->to_conservative(sod_exact(setup, x, 0.0)); }, cfg, {0.2});
    const double e = l1_against(sol, [&](double x) { return sod_exact(setup, x, 0.2)[0]; }, 0, 0.0, 1.0);
    s.at_most("oracle-sod-density", e, 5e-3, "n=4000, t=0.2");
  }
  {
    const LawPtr law = swe_law({});
    RiemannSetup setup{"swe", vec({5.0, 0.0}), vec({1.0, 0.0}), 0.5, 0.0, 1.0, 0.12};
    // Padded grid with the same spacing keeps outgoing waves away from the edges.
    FvConfig cfg;
    cfg.x_lo = -1.0;
    cfg.x_hi = 2.0;
    cfg.n_cells = 12000;
    const auto sol = fv_oracle(*law, [&](double x) { return law->to_conservative(stoker_exact(setup, x, 0.0)); }, cfg, {0.12});
    const double e = l1_against(sol, [&](double x) { return stoker_exact(setup, x, 0.12)[0]; }, 0, 0.0, 1.0);
    s.at_most("oracle-stoker-depth", e, 5e-3, "dx=1/4000, t=0.12");
  }
}

}  // namespace

std::vector<PropertyResult> run_validation(const ValidationOptions& options) {
  Suite s{options, {}};
  const std::vector<std::pair<const char*, void (*)(Suite&)>> groups = {
      {"quadrature", quadrature}, {"nullity", nullity}, {"entropy-pairs", entropy_pairs},
      {"shocks", shocks},         {"gradients", gradients}, {"optimizers", optimizers},
      {"riemann", riemann},       {"oracles", oracles}};
  for (const auto& [name, fn] : groups) {
    if (options.skip_oracles && std::string(name) == "oracles") continue;
    try {
      fn(s);
    } catch (const std::exception& e) {
      s.results.push_back({name, false, std::nan(""), 0.0, std::string("exception: ") + e.what()});
    }
  }
  return s.results;
}

}  // namespace wepinn
