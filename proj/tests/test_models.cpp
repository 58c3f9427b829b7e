#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/models.hpp"

using namespace wepinn;
using testing_support::rel_error;
using testing_support::vec;

namespace {

struct Sampler {
  std::mt19937_64 rng{17};
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  State draw(const ConservationLaw& law) {
    const double a = unit(rng), b = unit(rng), c = unit(rng);
    if (law.name() == "burgers") return vec({4.0 * a - 2.0});
    if (law.name() == "euler") return law.to_conservative(vec({0.1 + 3.0 * a, 4.0 * b - 2.0, 0.1 + 3.0 * c}));
    return law.to_conservative(vec({0.1 + 5.0 * a, 4.0 * b - 2.0}));
  }
};

State fd_grad(const std::function<double(const State&)>& f, const State& u) {
  State g(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(u[i]));
    State p = u, m = u;
    p[i] += h;
    m[i] -= h;
    g[i] = (f(p) - f(m)) / (2 * h);
  }
  return g;
}

std::vector<LawPtr> all_laws() { return {burgers_law(), euler_law({}), swe_law({})}; }

}  // namespace

TEST_CASE("Burgers flux and entropy pair") {
  const LawPtr b = burgers_law();
  CHECK(b->components() == 1);
  CHECK(b->dimension() == 1);
  CHECK(b->flux(vec({0.0}), 0)[0] == 0.0);
  CHECK(b->entropy(vec({0.0})) == 0.0);
  CHECK(b->entropy_flux(vec({0.0}), 0) == 0.0);
  CHECK(b->flux(vec({2.0}), 0)[0] == 2.0);
  CHECK(b->entropy(vec({2.0})) == 2.0);
  CHECK(b->entropy_flux(vec({2.0}), 0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Euler: Sod left state, still gas, admissibility") {
  const LawPtr e = euler_law({});
  CHECK(e->components() == 3);
  const State u = e->to_conservative(vec({1.0, 0.0, 1.0}));
  CHECK(u[0] == 1.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == doctest::Approx(2.5).epsilon(1e-15));
  const State f = e->flux(u, 0);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f[2] == 0.0);
  CHECK(e->entropy_flux(u, 0) == 0.0);
  // eta = -rho ln(p / rho^gamma)
  const State w = e->to_conservative(vec({2.0, 0.5, 3.0}));
  CHECK(e->entropy(w) == doctest::Approx(-2.0 * std::log(3.0 / std::pow(2.0, 1.4))).epsilon(1e-13));
  CHECK(e->to_conservative(vec({0.125, 0.0, 0.1}))[2] == doctest::Approx(0.25).epsilon(1e-15));

  const State bad = vec({-0.1, 0.0, 1.0});
  CHECK_FALSE(e->admissible(bad));
  CHECK_THROWS_AS(e->entropy(bad), AdmissibilityError);
  CHECK_THROWS_AS(e->flux(bad, 0), AdmissibilityError);
  const State low_p = vec({1.0, 2.0, 1.0});  // kinetic energy exceeds total energy
  CHECK_FALSE(e->admissible(low_p));
  CHECK(e->needs_clamp(low_p));
  CHECK(std::isfinite(e->entropy(low_p, Guard::clamped)));
  CHECK(e->entropy_gradient(low_p, Guard::clamped).allFinite());
  CHECK_THROWS_AS(euler_law({1.0}), ConfigError);
}

TEST_CASE("SWE: lake at rest and admissibility") {
  const LawPtr s = swe_law({});
  const State f = s->flux(vec({2.0, 0.0}), 0);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(19.62).epsilon(1e-15));
  CHECK(s->entropy_flux(vec({1.0, 0.0}), 0) == 0.0);
  CHECK(s->to_conservative(vec({5.0, 0.0})) == vec({5.0, 0.0}));
  CHECK_THROWS_AS(s->flux(vec({0.0, 1.0}), 0), AdmissibilityError);
  CHECK_THROWS_AS(swe_law({0.0}), ConfigError);
}

TEST_CASE("the paper-style SWE entropy flux eta*u fails compatibility; the implemented one passes") {
  const LawPtr s = swe_law({});
  const double g = 9.81;
  const State u = vec({1.7, 0.9});
  const State grad_eta = s->entropy_gradient(u);
  const State target = s->flux_jacobian(u, 0).transpose() * grad_eta;
  const auto naive = [g](const State& w) {
    const double h = w[0], v = w[1] / w[0];
    return (0.5 * h * v * v + 0.5 * g * h * h) * v;
  };
  CHECK(rel_error(fd_grad(naive, u), target) > 1e-2);
  CHECK(rel_error(fd_grad([&](const State& w) { return s->entropy_flux(w, 0); }, u), target) < 1e-6);
}

TEST_CASE("compatibility relation and convexity on random admissible states") {
  Sampler smp;
  for (const LawPtr& law : all_laws()) {
    CAPTURE(law->name());
    double worst = 0.0, convex = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const State u = smp.draw(*law);
      const State target = law->flux_jacobian(u, 0).transpose() * law->entropy_gradient(u);
      const State fd = fd_grad([&](const State& w) { return law->entropy_flux(w, 0); }, u);
      worst = std::max(worst, (fd - target).norm() / std::max(1.0, target.norm()));
      const State v = smp.draw(*law);
      convex = std::max(convex, law->entropy(0.5 * (u + v)) - 0.5 * (law->entropy(u) + law->entropy(v)));
    }
    CHECK(worst < 1e-6);
    CHECK(convex <= 1e-12);
  }
}

TEST_CASE("dual-number derivatives match finite differences") {
  Sampler smp;
  for (const LawPtr& law : all_laws()) {
    CAPTURE(law->name());
    for (int k = 0; k < 50; ++k) {
      const State u = smp.draw(*law);
      const int m = law->components();
      const Jacobian j = law->flux_jacobian(u, 0);
      for (int r = 0; r < m; ++r) {
        const State row = fd_grad([&](const State& w) { return law->flux(w, 0)[r]; }, u);
        CHECK(rel_error(j.row(r).transpose(), row) < 1e-6);
      }
      CHECK(rel_error(law->entropy_gradient(u), fd_grad([&](const State& w) { return law->entropy(w); }, u)) < 1e-6);
      CHECK(rel_error(law->entropy_flux_gradient(u, 0),
                      fd_grad([&](const State& w) { return law->entropy_flux(w, 0); }, u)) < 1e-6);
      const State wts = smp.draw(*law), dir = smp.draw(*law);
      const State d = law->flux_jacobian_derivative(u, 0, wts, dir);
      const State fd = fd_grad([&](const State& w) { return wts.dot(law->flux_jacobian(w, 0) * dir); }, u);
      CHECK(rel_error(d, fd) < 1e-5);
    }
  }
}

TEST_CASE("primitive and conservative conversions round-trip") {
  Sampler smp;
  for (const LawPtr& law : all_laws()) {
    for (int k = 0; k < 1000; ++k) {
      const State u = smp.draw(*law);
      CHECK((law->to_conservative(law->to_primitive(u)) - u).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, u.cwiseAbs().maxCoeff()));
    }
  }
  const LawPtr e = euler_law({});
  const State p = e->to_primitive(e->to_conservative(vec({1.0, 0.0, 1.0})));
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(e->to_conservative(vec({0.0, 0.0, 1.0})), AdmissibilityError);
}

TEST_CASE("wave speeds and law registry") {
  const LawPtr e = euler_law({});
  const auto [lo, hi] = e->wave_speed_bounds(e->to_conservative(vec({1.0, 0.5, 1.0})), 0);
  CHECK(lo == doctest::Approx(0.5 - std::sqrt(1.4)));
  CHECK(hi == doctest::Approx(0.5 + std::sqrt(1.4)));
  CHECK(make_law("burgers")->name() == "burgers");
  CHECK(make_law("euler")->components() == 3);
  CHECK(make_law("swe")->components() == 2);
  CHECK_THROWS_AS(make_law("mhd"), ConfigError);
  CHECK(e->conserved_names() == std::vector<std::string>{"rho", "m", "E"});
}
