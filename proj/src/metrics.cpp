#include "wepinn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wepinn/errors.hpp"

namespace wepinn {

RelativeErrors relative_norms(const Eigen::VectorXd& approx, const Eigen::VectorXd& exact) {
  expects(approx.size() == exact.size() && exact.size() > 0, "relative_norms: size mismatch");
  const Eigen::VectorXd diff = approx - exact;
  const double n1 = exact.lpNorm<1>();
  const double n2 = exact.norm();
  const double ninf = exact.lpNorm<Eigen::Infinity>();
  if (n1 == 0.0 || n2 == 0.0 || ninf == 0.0)
    throw ZeroNormError("relative_norms: reference has zero norm");
  return {diff.lpNorm<1>() / n1, diff.norm() / n2, diff.lpNorm<Eigen::Infinity>() / ninf};
}

Eigen::VectorXd uniform_grid(double x_lo, double x_hi, int n) {
  expects(n >= 1 && x_hi > x_lo, "uniform_grid: bad grid");
  const double h = (x_hi - x_lo) / n;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = x_lo + (i + 0.5) * h;
  return x;
}

ErrorReport relative_errors(const ProfileFn& approx, const ProfileFn& exact, double x_lo,
                            double x_hi, std::span<const double> times,
                            const std::vector<std::string>& names, int n_points) {
  const Eigen::VectorXd grid = uniform_grid(x_lo, x_hi, n_points);
  const int m = static_cast<int>(names.size());
  ErrorReport report;
  for (double t : times) {
    Eigen::MatrixXd a(m, n_points), e(m, n_points);
    for (int i = 0; i < n_points; ++i) {
      const State av = approx(grid[i], t);
      const State ev = exact(grid[i], t);
      expects(av.size() == m && ev.size() == m, "relative_errors: component count mismatch");
      a.col(i) = av;
      e.col(i) = ev;
    }
    for (int c = 0; c < m; ++c)
      report.rows.push_back({t, c, names[c], relative_norms(a.row(c).transpose(), e.row(c).transpose())});
  }
  return report;
}

double truncation_bound(double l_cons, double l_ent, double spacetime_measure) {
  expects(l_cons >= 0.0 && l_ent >= 0.0 && spacetime_measure >= 0.0,
          "truncation_bound: inputs must be nonnegative");
  return std::sqrt(spacetime_measure) * (std::sqrt(l_cons) + std::sqrt(l_ent));
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return v[i] < v[j]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
  expects(a.size() == b.size() && a.size() >= 2, "spearman: need two equal-length samples");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

BoundDiagnostic l1_bound_diagnostic(std::span<const BoundSample> history) {
  if (history.size() < 5) throw ConfigError("l1_bound_diagnostic: need at least 5 checkpoints");
  BoundDiagnostic out;
  std::vector<double> errors;
  for (const BoundSample& s : history) {
    expects(s.l_cons >= 0.0 && s.l_ent >= 0.0 && s.error >= 0.0,
            "l1_bound_diagnostic: negative entry");
    const double b = std::pow(s.l_cons, 0.25) + std::pow(s.l_ent, 0.25);
    out.bound.push_back(b);
    errors.push_back(s.error);
    double ratio = 0.0;
    if (b > 0.0) ratio = s.error / b;
    else if (s.error > 0.0) ratio = std::numeric_limits<double>::infinity();
    out.k_hat = std::max(out.k_hat, ratio);
  }
  out.correlation = spearman(out.bound, errors);
  return out;
}

double total_variation(std::span<const double> x, const Eigen::MatrixXd& values) {
  expects(static_cast<Eigen::Index>(x.size()) == values.cols(), "total_variation: size mismatch");
  expects(std::is_sorted(x.begin(), x.end()), "total_variation: samples must be sorted");
  double tv = 0.0;
  for (Eigen::Index k = 0; k + 1 < values.cols(); ++k)
    tv += (values.col(k + 1) - values.col(k)).cwiseAbs().sum();
  return tv;
}

}  // namespace wepinn
