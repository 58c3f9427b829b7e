#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/metrics.hpp"

using namespace wepinn;
using testing_support::vec;

TEST_CASE("relative norms: identity, constant offset, zero reference") {
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(1000);
  const RelativeErrors z = relative_norms(e, e);
  CHECK(z.l1 == 0.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.linf == 0.0);
  const RelativeErrors r = relative_norms(e.array() + 0.1, e);
  CHECK(r.l1 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.l2 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.linf == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(relative_norms(e, Eigen::VectorXd::Zero(1000)), ZeroNormError);
}

TEST_CASE("relative norms by hand and scale covariance") {
  Eigen::VectorXd a(4), e(4);
  a << 1.0, 2.0, 0.0, -1.0;
  e << 1.0, 1.0, 1.0, -2.0;
  const RelativeErrors r = relative_norms(a, e);
  CHECK(r.l1 == doctest::Approx(3.0 / 5.0));
  CHECK(r.l2 == doctest::Approx(std::sqrt(3.0 / 7.0)));
  CHECK(r.linf == doctest::Approx(0.5));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd x(50), y(50);
    for (int i = 0; i < 50; ++i) {
      x[i] = n(rng);
      y[i] = n(rng);
    }
    const double c = k % 2 ? -3.7 : 0.01 * (k + 1);
    const RelativeErrors p = relative_norms(x, y), q = relative_norms(c * x, c * y);
    CHECK(q.l1 == doctest::Approx(p.l1).epsilon(1e-12));
    CHECK(q.l2 == doctest::Approx(p.l2).epsilon(1e-12));
    CHECK(q.linf == doctest::Approx(p.linf).epsilon(1e-12));
  }
}

TEST_CASE("relative_errors over times and components") {
  const Eigen::VectorXd g = uniform_grid(0.0, 1.0, 4);
  CHECK(g[0] == doctest::Approx(0.125));
  CHECK(g[3] == doctest::Approx(0.875));
  const ProfileFn exact = [](double x, double t) { return vec({1.0 + t, x + 1.0}); };
  const ProfileFn approx = [](double x, double t) { return vec({1.1 + 1.1 * t, x + 1.0}); };
  const std::vector<double> times{0.0, 1.0};
  const ErrorReport rep = relative_errors(approx, exact, 0.0, 1.0, times, {"a", "b"});
  REQUIRE(rep.rows.size() == 4);
  for (const ErrorRow& row : rep.rows) {
    if (row.variable == "a") {
      CHECK(row.err.l1 == doctest::Approx(0.1).epsilon(1e-12));
      CHECK(row.err.linf == doctest::Approx(0.1).epsilon(1e-12));
    } else {
      CHECK(row.err.l1 == 0.0);
    }
  }
}

TEST_CASE("truncation bound examples and monotonicity") {
  CHECK(truncation_bound(0, 0, 7.0) == 0.0);
  CHECK(truncation_bound(1, 0, 4) == doctest::Approx(2.0));
  CHECK(truncation_bound(1e-4, 1e-4, 2) == doctest::Approx(0.0282843).epsilon(1e-5));
  CHECK_THROWS_AS(truncation_bound(-1e-3, 0, 1), ContractViolation);
  double prev = 0.0;
  for (double c = 0.0; c < 1.0; c += 0.05) {
    const double b = truncation_bound(c, 0.3, 2.0);
    CHECK(b >= prev);
    CHECK(truncation_bound(0.3, c, 2.0) >= truncation_bound(0.3, c * 0.5, 2.0));
    prev = b;
  }
}

TEST_CASE("L1 bound diagnostic") {
  std::vector<BoundSample> h;
  for (int k = 1; k <= 6; ++k) {
    const double lc = std::pow(10.0, -k), le = std::pow(10.0, -k - 1);
    h.push_back({lc, le, 2.0 * (std::pow(lc, 0.25) + std::pow(le, 0.25))});
  }
  const BoundDiagnostic d = l1_bound_diagnostic(h);
  CHECK(d.k_hat == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(d.correlation.has_value());
  CHECK(*d.correlation == doctest::Approx(1.0));

  std::vector<BoundSample> flat(5, BoundSample{0.1, 0.1, 0.0});
  for (int k = 0; k < 5; ++k) flat[k].error = 0.1 * k;
  CHECK_FALSE(l1_bound_diagnostic(flat).correlation.has_value());
  CHECK_THROWS_AS(l1_bound_diagnostic(std::span(h).first(4)), ConfigError);
}

TEST_CASE("spearman with ties") {
  const std::vector<double> a{1, 2, 3, 4}, b{10, 20, 30, 40}, c{4, 3, 2, 1}, t{1, 1, 2, 3};
  CHECK(*spearman(a, b) == doctest::Approx(1.0));
  CHECK(*spearman(a, c) == doctest::Approx(-1.0));
  // Average ranks of t: 1.5 1.5 3 4; Pearson on ranks.
  CHECK(*spearman(a, t) == doctest::Approx(0.9486833).epsilon(1e-6));
}

TEST_CASE("total variation") {
  const std::vector<double> x{0.0, 0.2, 0.5, 0.9};
  Eigen::MatrixXd v(1, 4);
  v << 0.3, 0.3, 0.3, 0.3;
  CHECK(total_variation(x, v) == 0.0);
  v << 0.0, 0.1, 0.7, 1.0;
  CHECK(total_variation(x, v) == 1.0);
  Eigen::MatrixXd w(2, 4);
  w << 0, 1, 0, 1, 2, 1, 1, 0;
  CHECK(total_variation(x, w) == 5.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> vals(30);
    for (double& s : vals) s = u(rng);
    std::sort(vals.begin(), vals.end());
    Eigen::MatrixXd m = Eigen::Map<Eigen::MatrixXd>(vals.data(), 1, 30);
    std::vector<double> xs(30);
    for (int i = 0; i < 30; ++i) xs[i] = i;
    CHECK(total_variation(xs, m) == doctest::Approx(vals.back() - vals.front()).epsilon(1e-14));
  }
  CHECK_THROWS_AS(total_variation(std::vector<double>{0.0, 1.0, 0.5, 2.0}, v), ContractViolation);
}
