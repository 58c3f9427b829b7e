#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/reference.hpp"

using namespace wepinn;
using testing_support::vec;

namespace {

RiemannSetup sod_setup() {
  RiemannSetup s;
  s.law = "euler";
  s.left = vec({1.0, 0.0, 1.0});
  s.right = vec({0.125, 0.0, 0.1});
  s.t_end = 0.2;
  return s;
}

RiemannSetup stoker_setup() {
  RiemannSetup s;
  s.law = "swe";
  s.left = vec({5.0, 0.0});
  s.right = vec({1.0, 0.0});
  s.t_end = 0.12;
  return s;
}

// Absolute L1 distance between FV cell averages and point values at centres.
double l1_vs(const FvSolution& fv, int snap, int comp, const std::function<double(double)>& exact) {
  const double dx = fv.centres[1] - fv.centres[0];
  double s = 0.0;
  for (Eigen::Index i = 0; i < fv.centres.size(); ++i)
    s += std::abs(fv.snapshots[snap](comp, i) - exact(fv.centres[i])) * dx;
  return s;
}

}  // namespace

TEST_CASE("Burgers exact profiles") {
  using enum BurgersCase;
  CHECK(burgers_exact(shock, -0.24, 0.0) == 0.0);
  CHECK(burgers_exact(shock, 0.26, 1.0) == 0.0);
  CHECK(burgers_exact(shock, 0.24, 1.0) == 1.0);
  CHECK(burgers_exact(rarefaction, -0.25, 1.0) == doctest::Approx(0.0));
  CHECK(burgers_exact(rarefaction, 0.75, 1.0) == doctest::Approx(1.0));
  CHECK(burgers_exact(rarefaction, 0.25, 1.0) == 0.5);
  CHECK(burgers_exact(rarefaction, -0.5, 1.0) == 0.0);
  CHECK(burgers_exact(rarefaction, 0.9, 1.0) == 1.0);
  // Interaction at t = 0.5: fan from -0.5 reaches 0, shock at 0.25.
  CHECK(burgers_exact(interaction, -0.25, 0.5) == doctest::Approx(0.5));
  CHECK(burgers_exact(interaction, 0.1, 0.5) == 1.0);
  CHECK(burgers_exact(interaction, 0.24, 0.5) == 1.0);
  CHECK(burgers_exact(interaction, 0.26, 0.5) == 0.0);
  // After the fan overtakes the shock at t = 1, the shock follows sqrt(t) - 1/2.
  const double xs = std::sqrt(2.0) - 0.5;
  CHECK(burgers_exact(interaction, xs - 1e-6, 2.0) == doctest::Approx((xs + 0.5) / 2.0).epsilon(1e-5));
  CHECK(burgers_exact(interaction, xs + 1e-6, 2.0) == 0.0);
  for (double x : {-0.9, -0.4, 0.0, 0.3})
    for (auto c : {shock, rarefaction, interaction}) CHECK(burgers_exact(c, x, 0.0) == burgers_initial(c, x));
  CHECK_THROWS_AS(burgers_exact(shock, 0.0, -0.1), ContractViolation);
  CHECK_THROWS_AS(parse_burgers_case("tsunami"), ConfigError);
  CHECK(parse_burgers_case("interaction") == interaction);
}

TEST_CASE("Sod star state") {
  const EulerRiemann rp(vec({1.0, 0.0, 1.0}), vec({0.125, 0.0, 0.1}), 1.4);
  CHECK(rp.p_star() == doctest::Approx(0.30313).epsilon(1e-4));
  CHECK(rp.u_star() == doctest::Approx(0.92745).epsilon(1e-4));
  CHECK(std::abs(rp.pressure_function(rp.p_star())) < 1e-12);
  CHECK(rp.iterations() <= 100);
  // Post-shock density from Rankine-Hugoniot, computed here directly.
  const double g = 1.4, pr = rp.p_star() / 0.1;
  const double rho_shock = 0.125 * (pr + (g - 1) / (g + 1)) / ((g - 1) / (g + 1) * pr + 1);
  CHECK(rp.sample(rp.u_star() + 1e-6)[0] == doctest::Approx(rho_shock).epsilon(1e-10));
  // Isentropic left star density.
  CHECK(rp.sample(rp.u_star() - 1e-6)[0] == doctest::Approx(std::pow(rp.p_star(), 1 / g)).epsilon(1e-10));
  CHECK_THROWS_AS(EulerRiemann(vec({1.0, -10.0, 1.0}), vec({1.0, 10.0, 1.0}), 1.4), UnsupportedError);
}

TEST_CASE("Riemann solutions: constant data and mirror symmetry") {
  RiemannSetup s = sod_setup();
  s.right = s.left;
  for (double x : {0.1, 0.5, 0.77})
    CHECK((sod_exact(s, x, 0.15) - s.left).cwiseAbs().maxCoeff() < 1e-12);
  RiemannSetup w = stoker_setup();
  w.right = w.left;
  CHECK((stoker_exact(w, 0.3, 0.1) - w.left).cwiseAbs().maxCoeff() < 1e-12);

  const RiemannSetup a = sod_setup();
  RiemannSetup b = a;
  b.left = a.right;
  b.right = a.left;
  const RiemannSetup c = stoker_setup();
  RiemannSetup d = c;
  d.left = c.right;
  d.right = c.left;
  for (double x : {0.05, 0.3, 0.45, 0.52, 0.6, 0.71, 0.95}) {
    const State p = sod_exact(a, x, 0.2), q = sod_exact(b, 1.0 - x, 0.2);
    CHECK(p[0] == doctest::Approx(q[0]).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(-q[1]).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(q[2]).epsilon(1e-12));
    const State h = stoker_exact(c, x, 0.05), k = stoker_exact(d, 1.0 - x, 0.05);
    CHECK(h[0] == doctest::Approx(k[0]).epsilon(1e-12));
    CHECK(h[1] == doctest::Approx(-k[1]).epsilon(1e-12));
  }
}

TEST_CASE("dam break middle state solves the bore compatibility equation") {
  const double g = 9.81, hl = 5.0, hr = 1.0;
  // Independent bisection on 2(c_l - c_m) = (h_m - h_r) sqrt(g (h_m + h_r) / (2 h_m h_r)).
  auto gap = [&](double h) {
    return 2 * (std::sqrt(g * hl) - std::sqrt(g * h)) - (h - hr) * std::sqrt(g * (h + hr) / (2 * h * hr));
  };
  double lo = hr, hi = hl;
  for (int i = 0; i < 200; ++i) (gap(0.5 * (lo + hi)) > 0 ? lo : hi) = 0.5 * (lo + hi);
  const DamBreak db(vec({hl, 0.0}), vec({hr, 0.0}), g);
  CHECK(db.h_middle() == doctest::Approx(lo).epsilon(1e-10));
  CHECK(db.u_middle() == doctest::Approx(2 * (std::sqrt(g * hl) - std::sqrt(g * lo))).epsilon(1e-10));
  CHECK(db.shock_speed() == doctest::Approx(db.h_middle() * db.u_middle() / (db.h_middle() - hr)).epsilon(1e-10));
  const RiemannSetup s = stoker_setup();
  for (int i = 0; i <= 100; ++i) CHECK(stoker_exact(s, i / 100.0, 0.12)[0] >= hr);
}

TEST_CASE("fv oracle: constant data stays constant") {
  const auto law = euler_law({});
  const State c = law->to_conservative(vec({0.7, 0.3, 1.1}));
  FvConfig cfg;
  cfg.n_cells = 200;
  const FvSolution fv = fv_oracle(*law, [&](double) { return c; }, cfg, {0.0, 0.1});
  for (const auto& snap : fv.snapshots)
    for (Eigen::Index i = 0; i < snap.cols(); ++i) CHECK((snap.col(i) - c).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fv oracle: Burgers shock position and refinement") {
  const auto law = burgers_law();
  const auto u0 = [](double x) { return vec({burgers_initial(BurgersCase::shock, x)}); };
  std::vector<double> errs;
  for (int n : {500, 1000, 2000, 4000}) {
    FvConfig cfg;
    cfg.x_lo = -1.0;
    cfg.n_cells = n;
    const FvSolution fv = fv_oracle(*law, u0, cfg, {1.0});
    errs.push_back(l1_vs(fv, 0, 0, [](double x) { return burgers_exact(BurgersCase::shock, x, 1.0); }));
    if (n == 4000) {
      const double dx = 2.0 / n;
      double pos = -1.0;
      for (Eigen::Index i = 0; i < fv.centres.size(); ++i) pos += fv.snapshots[0](0, i) * dx;
      CHECK(std::abs(pos - 0.25) <= dx);
      CHECK(errs.back() < 5e-3);
    }
  }
  for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] < errs[i - 1]);
}

TEST_CASE("fv oracle agrees with the exact interaction and Sod solutions") {
  {
    const auto u0 = [](double x) { return vec({burgers_initial(BurgersCase::interaction, x)}); };
    FvConfig cfg;
    cfg.x_lo = -1.0;
    const FvSolution fv = fv_oracle(*burgers_law(), u0, cfg, {0.5});
    CHECK(l1_vs(fv, 0, 0, [](double x) { return burgers_exact(BurgersCase::interaction, x, 0.5); }) < 5e-3);
  }
  {
    const RiemannSetup s = sod_setup();
    const auto law = euler_law({});
    const FvSolution fv =
        fv_oracle(*law, [&](double x) { return law->to_conservative(sod_exact(s, x, 0.0)); }, FvConfig{}, {0.2});
    CHECK(l1_vs(fv, 0, 0, [&](double x) { return sod_exact(s, x, 0.2)[0]; }) < 5e-3);
  }
}
