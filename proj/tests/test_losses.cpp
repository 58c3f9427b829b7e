#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/losses.hpp"

using namespace wepinn;
using testing_support::fd_gradient;
using testing_support::random_params;
using testing_support::rel_error;
using testing_support::vec;

namespace {

double shock_u(double x, double t) { return x < -0.25 + 0.5 * t ? 1.0 : 0.0; }
double expansion_u(double x, double t) { return x < -0.25 + 0.5 * t ? 0.0 : 1.0; }

SolutionFn scalar(double (*f)(double, double)) {
  return [f](std::span<const double> x, double t) { return vec({f(x[0], t)}); };
}

// Zero network whose last bias is b: the ansatz is (1 - t/T) U0 + (t/T) b.
Ansatz constant_net_ansatz(double b, std::function<double(double)> u0, double T,
                           int hidden = 3) {
  NetworkParams p({2, hidden, 1});
  p.bias(1)[0] = b;
  InitialCondition ic{[u0](std::span<const double> x) { return vec({u0(x[0])}); }, {}};
  return Ansatz(p, ic, T);
}

// Independent Gauss sum of the four 1D faces of a box for a scalar law.
double box_balance(const QuadRule& r, double x1, double x2, double t1, double t2,
                   const std::function<double(double, double)>& u,
                   const std::function<double(double)>& flux) {
  const double top = integrate_interval(r, x1, x2, [&](double x) { return u(x, t2); });
  const double bottom = integrate_interval(r, x1, x2, [&](double x) { return u(x, t1); });
  const double right = integrate_interval(r, t1, t2, [&](double t) { return flux(u(x2, t)); });
  const double left = integrate_interval(r, t1, t2, [&](double t) { return flux(u(x1, t)); });
  return top - bottom + right - left;
}

}  // namespace

TEST_CASE("residuals of constant states vanish for every law") {
  const ControlVolume box = make_box_1d(-0.3, 0.2, 0.1, 0.45);
  const QuadRule rule = gauss_legendre(6);
  for (const LawPtr& law : {burgers_law(), euler_law({}), swe_law({})}) {
    State c = law->name() == "burgers" ? vec({0.7})
              : law->name() == "euler" ? law->to_conservative(vec({1.2, -0.4, 2.5}))
                                       : law->to_conservative(vec({3.0, 0.6}));
    const SolutionFn u = [c](std::span<const double>, double) { return c; };
    CHECK(weak_residual(u, *law, box, rule).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(entropy_residual(u, *law, box, rule)) < 1e-12);
  }
}

TEST_CASE("weak residual of u = x on the unit box is one half") {
  const SolutionFn u = [](std::span<const double> x, double) { return vec({x[0]}); };
  const State r = weak_residual(u, *burgers_law(), make_box_1d(0, 1, 0, 1), gauss_legendre(6));
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("exact shock on the example box matches the independent face sum") {
  const auto law = burgers_law();
  const auto flux = [](double u) { return 0.5 * u * u; };
  for (int q : {6, 32}) {
    const QuadRule r = gauss_legendre(q);
    const double got = weak_residual(scalar(shock_u), *law, make_box_1d(-0.3, 0.0, 0.1, 0.3), r)[0];
    CHECK(got == doctest::Approx(box_balance(r, -0.3, 0.0, 0.1, 0.3, shock_u, flux)).epsilon(1e-13));
  }
}

TEST_CASE("entropy sign on entropic and expansion shocks") {
  const auto law = burgers_law();
  const QuadRule r = gauss_legendre(32);
  // Analytic production on this box: (1/4 - 1/3) * 0.2.
  const ControlVolume box = make_box_1d(-0.3, 0.0, 0.1, 0.3);
  const double e = entropy_residual(scalar(shock_u), *law, box, r);
  CHECK(e < 0.0);
  CHECK(e == doctest::Approx(-0.2 / 12.0).epsilon(0.3));
  const double f = entropy_residual(scalar(expansion_u), *law, box, r);
  CHECK(f > 1e-3);
}

TEST_CASE("entropy residual is nonpositive across the exact Burgers shock") {
  const auto law = burgers_law();
  const QuadRule r = gauss_legendre(32);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> side(0.05, 0.1), t0(0.0, 0.8), off(0.1, 0.9);
  for (int k = 0; k < 100; ++k) {
    const double lt = side(rng), lx = side(rng);
    const double t1 = t0(rng);
    const double s = -0.25 + 0.5 * (t1 + 0.5 * lt);
    const double x1 = s - off(rng) * lx;
    const ControlVolume box = make_box_1d(x1, x1 + lx, t1, t1 + lt);
    CHECK(entropy_residual(scalar(shock_u), *law, box, r) <= 1e-6);
    CHECK(std::abs(weak_residual(scalar(shock_u), *law, box, r)[0]) <= 1e-2);
  }
}

TEST_CASE("cons_loss and ent_loss formulas") {
  const double b = std::sqrt(2.0);
  const Ansatz a = constant_net_ansatz(b, [](double) { return 0.0; }, 2.0);
  const std::vector<ControlVolume> one{make_box_1d(0, 2, 0, 2)};
  const QuadRule rule = gauss_legendre(4);
  // Only the top face survives: R = 2b, E = 2 * b^2 / 2 = 2, |D| = 4.
  CHECK(ent_loss(a, *burgers_law(), one, rule) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(cons_loss(a, *burgers_law(), one, rule) == doctest::Approx(4.0 * 2.0 / 4.0).epsilon(1e-13));

  const Ansatz falling = constant_net_ansatz(0.0, [](double) { return 0.8; }, 2.0);
  CHECK(ent_loss(falling, *burgers_law(), one, rule) == 0.0);
  CHECK(cons_loss(falling, *burgers_law(), one, rule) > 0.0);

  const Ansatz still = constant_net_ansatz(0.5, [](double) { return 0.5; }, 2.0);
  CHECK(cons_loss(still, *burgers_law(), one, rule) < 1e-28);
  CHECK(ent_loss(still, *burgers_law(), one, rule) == 0.0);

  CHECK_THROWS_AS(cons_loss(a, *burgers_law(), std::vector<ControlVolume>{}, rule), ConfigError);
  CHECK_THROWS_AS(ent_loss(a, *burgers_law(), std::vector<ControlVolume>{}, rule), ConfigError);
}

TEST_CASE("losses are means over volumes") {
  const auto law = burgers_law();
  InitialCondition ic{[](std::span<const double> x) { return vec({std::sin(3 * x[0])}); }, {}};
  const Ansatz a(random_params({2, 6, 1}, 11), ic, 1.0, InputScaling::box_1d(-1, 1, 1));
  const Domain d = [] { Domain d; d.x_lo[0] = -1; d.x_hi[0] = 1; return d; }();
  Rng rng = make_rng(9);
  std::vector<ControlVolume> vs = sample_volumes(d, SamplerConfig::defaults(d, 37), rng);
  const QuadRule rule = gauss_legendre(6);
  const auto res = WeakLossEvaluator(*law, rule).residuals(a, vs);
  double cons = 0.0, ent = 0.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    cons += res[k].first.squaredNorm() / vs[k].measure();
    ent += std::pow(std::max(0.0, res[k].second), 2) / vs[k].measure();
  }
  const double c1 = cons_loss(a, *law, vs, rule), e1 = ent_loss(a, *law, vs, rule);
  CHECK(c1 == doctest::Approx(cons / vs.size()).epsilon(1e-12));
  CHECK(e1 == doctest::Approx(ent / vs.size()).epsilon(1e-12));
  std::vector<ControlVolume> twice = vs;
  twice.insert(twice.end(), vs.begin(), vs.end());
  CHECK(cons_loss(a, *law, twice, rule) == doctest::Approx(c1).epsilon(1e-13));
  CHECK(ent_loss(a, *law, twice, rule) == doctest::Approx(e1).epsilon(1e-13));
}

TEST_CASE("tvd_loss examples") {
  const Ansatz step = constant_net_ansatz(0.0, [](double x) { return x < 0.0 ? 0.0 : 1.0; }, 1.0);
  TvdCloud cloud;
  cloud.times = {0.0};
  cloud.x = {{-0.9, -0.5, -0.1, 0.2, 0.6}};
  CHECK(tvd_loss(step, cloud) == 1.0);

  const Ansatz saw = constant_net_ansatz(0.0, [](double x) { return std::fmod(x, 2.0); }, 1.0);
  cloud.x = {{0.0, 1.0, 2.0, 3.0}};
  CHECK(tvd_loss(saw, cloud) == 3.0);

  // The max over levels: at t = T the ansatz is the constant network output.
  cloud.times = {1.0, 0.0};
  cloud.x = {{0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 3.0}};
  CHECK(tvd_loss(saw, cloud) == 3.0);

  const Ansatz flat = constant_net_ansatz(0.3, [](double) { return 0.3; }, 1.0);
  CHECK(tvd_loss(flat, cloud) == 0.0);

  cloud.x = {{0.0, 2.0, 1.0, 3.0}, {0.0, 1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(tvd_loss(saw, cloud), ContractViolation);
}

TEST_CASE("total loss is the unit-weight sum") {
  const auto law = burgers_law();
  InitialCondition ic{[](std::span<const double> x) { return vec({0.5 + 0.3 * std::cos(2 * x[0])}); }, {}};
  const Ansatz a(random_params({2, 5, 1}, 3), ic, 1.0, InputScaling::box_1d(-1, 1, 1));
  Domain d;
  d.x_lo[0] = -1;
  d.x_hi[0] = 1;
  Rng rng = make_rng(4);
  const auto vs = sample_volumes(d, SamplerConfig::defaults(d, 20), rng);
  const TvdCloud cloud = sample_tvd_cloud(d, 4, 32, rng);
  const QuadRule rule = gauss_legendre(6);
  const LossBreakdown lb = total_loss(a, *law, vs, cloud, rule);
  CHECK(lb.total == doctest::Approx(lb.cons + lb.ent + lb.tvd).epsilon(1e-15));
  CHECK(lb.cons == doctest::Approx(cons_loss(a, *law, vs, rule)).epsilon(1e-13));
  CHECK(lb.ent == doctest::Approx(ent_loss(a, *law, vs, rule)).epsilon(1e-13));
  CHECK(lb.tvd == doctest::Approx(tvd_loss(a, cloud)).epsilon(1e-13));
  CHECK(lb.grad.allFinite());

  const Ansatz exact = constant_net_ansatz(0.4, [](double) { return 0.4; }, 1.0);
  const LossBreakdown zero = total_loss(exact, *law, vs, cloud, rule);
  CHECK(zero.total < 1e-28);
  CHECK(zero.grad.allFinite());
}

TEST_CASE("total loss gradient matches finite differences") {
  struct Case {
    LawPtr law;
    std::function<State(std::span<const double>)> u0;
    BoundaryMode mode;
  };
  const std::vector<Case> cases{
      {burgers_law(), [](std::span<const double> x) { return vec({std::sin(2 * x[0])}); },
       BoundaryMode::network_value},
      {burgers_law(), [](std::span<const double> x) { return vec({0.2 + 0.5 * x[0]}); },
       BoundaryMode::dirichlet_state},
      {euler_law({}),
       [](std::span<const double> x) {
         return euler_law({})->to_conservative(vec({1.0 + 0.2 * x[0], 0.1, 1.0 - 0.1 * x[0]}));
       },
       BoundaryMode::network_value},
      {swe_law({}), [](std::span<const double> x) { return vec({2.0 + 0.3 * x[0], 0.2}); },
       BoundaryMode::dirichlet_state},
  };
  for (const Case& c : cases) {
    CAPTURE(c.law->name());
    const int m = c.law->components();
    Domain d;
    d.x_lo[0] = -1;
    d.x_hi[0] = 1;
    d.t_end = 0.5;
    const InputScaling sc = InputScaling::box_1d(-1, 1, 0.5);
    NetworkParams p0 = random_params({2, 4, m}, 21, 0.15);
    const State far = c.u0(std::array<double, 1>{0.0});
    for (int i = 0; i < m; ++i) p0.bias(1)[i] += far[i];
    const InitialCondition ic{c.u0, {}};
    Rng rng = make_rng(8);
    auto vs = sample_volumes(d, SamplerConfig::defaults(d, 12), rng);
    vs.push_back(make_box_1d(-1.0, -0.7, 0.1, 0.3));  // touches the boundary
    const TvdCloud cloud = sample_tvd_cloud(d, 3, 16, rng);
    BoundaryCondition bc{c.mode, d, [c](std::span<const double> x, double) { return c.u0(x); }};
    const WeakLossEvaluator ev(*c.law, gauss_legendre(4), bc, Guard::strict);
    const auto f = [&](const Eigen::VectorXd& th) {
      const Ansatz a(NetworkParams::unflatten(p0.layer_sizes(), th), ic, 0.5, sc);
      return ev.evaluate(a, vs, &cloud, false).total;
    };
    const Ansatz a(p0, ic, 0.5, sc);
    const LossBreakdown lb = ev.evaluate(a, vs, &cloud, true);
    CHECK(lb.total > 0.0);
    CHECK(rel_error(lb.grad, fd_gradient(f, p0.flat(), 1e-6)) < 1e-4);
  }
}

TEST_CASE("strong-form loss of a linear network") {
  // No hidden layer: u = a x + c t + b0 exactly.
  NetworkParams p({2, 1});
  const double a = 0.7, c = -0.3, b0 = 0.2;
  p.weight(0)(0, 0) = a;
  p.weight(0)(0, 1) = c;
  p.bias(0)[0] = b0;
  const ScaledNetwork net{p, InputScaling::identity(2)};
  StrongFormBatch batch;
  batch.collocation.resize(2, 3);
  batch.collocation << 0.1, -0.5, 0.9, 0.2, 0.6, 0.0;
  batch.ic_points.resize(2, 2);
  batch.ic_points << -0.4, 0.4, 0.0, 0.0;
  batch.ic_targets.resize(1, 2);
  batch.ic_targets << 0.0, 1.0;
  batch.bc_points.resize(2, 1);
  batch.bc_points << 1.0, 0.5;
  batch.bc_targets.resize(1, 1);
  batch.bc_targets << 0.0;
  double res = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double x = batch.collocation(0, i), t = batch.collocation(1, i);
    res += std::pow(c + (a * x + c * t + b0) * a, 2) / 3.0;
  }
  const double ic = (std::pow(-0.28 + 0.2, 2) + std::pow(0.28 + 0.2 - 1.0, 2)) / 2.0;
  const double bcv = std::pow(0.7 - 0.15 + 0.2, 2);
  const StrongFormLoss l = strong_pinn_loss(net, *burgers_law(), batch);
  CHECK(l.residual == doctest::Approx(res).epsilon(1e-13));
  CHECK(l.initial == doctest::Approx(ic).epsilon(1e-13));
  CHECK(l.boundary == doctest::Approx(bcv).epsilon(1e-13));
  CHECK(l.total == doctest::Approx(res + ic + bcv).epsilon(1e-13));
}

TEST_CASE("strong-form loss: constant exact state and gradient check") {
  NetworkParams p({2, 3, 1});
  p.bias(1)[0] = 0.6;
  StrongFormBatch batch;
  batch.collocation = Eigen::MatrixXd::Random(2, 20);
  batch.ic_points = Eigen::MatrixXd::Random(2, 5);
  batch.ic_points.row(1).setZero();
  batch.ic_targets = Eigen::MatrixXd::Constant(1, 5, 0.6);
  batch.bc_points = Eigen::MatrixXd::Random(2, 4);
  batch.bc_targets = Eigen::MatrixXd::Constant(1, 4, 0.6);
  const ScaledNetwork flat{p, InputScaling::identity(2)};
  const StrongFormLoss z = strong_pinn_loss(flat, *burgers_law(), batch);
  CHECK(z.total < 1e-28);
  CHECK(z.grad.allFinite());

  for (const LawPtr& law : {burgers_law(), swe_law({})}) {
    const int m = law->components();
    const NetworkParams q = random_params({2, 5, m}, 13, 0.2);
    const InputScaling sc = InputScaling::box_1d(-1, 1, 1);
    batch.ic_targets = Eigen::MatrixXd::Constant(m, 5, 2.0);
    batch.bc_targets = Eigen::MatrixXd::Constant(m, 4, 2.0);
    const auto f = [&](const Eigen::VectorXd& th) {
      NetworkParams r = NetworkParams::unflatten(q.layer_sizes(), th);
      return strong_pinn_loss(ScaledNetwork{r, sc}, *law, batch, Guard::strict).total;
    };
    Eigen::VectorXd th = q.flat();
    NetworkParams shifted = NetworkParams::unflatten(q.layer_sizes(), th);
    shifted.bias(1)[0] += 2.0;
    th = shifted.flat();
    const StrongFormLoss l =
        strong_pinn_loss(ScaledNetwork{shifted, sc}, *law, batch, Guard::strict);
    CHECK(rel_error(l.grad, fd_gradient(f, th, 1e-6)) < 1e-4);
  }
}
