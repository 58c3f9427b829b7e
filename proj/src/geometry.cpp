#include "wepinn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wepinn/errors.hpp"

namespace wepinn {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

void Domain::validate() const {
  if (dim < 1 || dim > kMaxSpatialDim) throw ConfigError("domain: dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a)
    if (!(x_lo[a] < x_hi[a])) throw ConfigError("domain: empty spatial extent");
  if (!(t_end > 0.0)) throw ConfigError("domain: horizon must be positive");
}

double Domain::spacetime_measure() const {
  double m = t_end;
  for (int a = 0; a < dim; ++a) m *= length(a);
  return m;
}

double ControlVolume::measure() const {
  double m = t_hi - t_lo;
  for (int a = 0; a < dim; ++a) m *= x_hi[a] - x_lo[a];
  return m;
}

void ControlVolume::validate() const {
  expects(dim >= 1 && dim <= kMaxSpatialDim, "control volume: dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) expects(x_lo[a] < x_hi[a], "control volume: empty spatial side");
  expects(t_lo < t_hi, "control volume: empty time side");
}

bool ControlVolume::inside(const Domain& domain, double slack) const {
  if (dim != domain.dim) return false;
  for (int a = 0; a < dim; ++a) {
    if (x_lo[a] < domain.x_lo[a] - slack || x_hi[a] > domain.x_hi[a] + slack) return false;
  }
  return t_lo >= -slack && t_hi <= domain.t_end + slack;
}

ControlVolume make_box_1d(double x_lo, double x_hi, double t_lo, double t_hi) {
  ControlVolume v;
  v.dim = 1;
  v.x_lo[0] = x_lo;
  v.x_hi[0] = x_hi;
  v.t_lo = t_lo;
  v.t_hi = t_hi;
  v.validate();
  return v;
}

SamplerConfig SamplerConfig::defaults(const Domain& domain, int n_volumes) {
  double shortest = domain.length(0);
  for (int a = 1; a < domain.dim; ++a) shortest = std::min(shortest, domain.length(a));
  SamplerConfig cfg;
  cfg.n_volumes = n_volumes;
  cfg.lx_min = 0.02 * shortest;
  cfg.lx_max = 0.5 * shortest;
  cfg.lt_min = 0.02 * domain.t_end;
  cfg.lt_max = 0.5 * domain.t_end;
  return cfg;
}

void SamplerConfig::validate(const Domain& domain) const {
  if (n_volumes < 0) throw ConfigError("sampler: n_volumes must be non-negative");
  if (!(lx_min > 0.0 && lx_min <= lx_max)) throw ConfigError("sampler: need 0 < lx_min <= lx_max");
  if (!(lt_min > 0.0 && lt_min <= lt_max)) throw ConfigError("sampler: need 0 < lt_min <= lt_max");
  for (int a = 0; a < domain.dim; ++a)
    if (lx_max > domain.length(a)) throw ConfigError("sampler: lx_max exceeds the domain");
  if (lt_max > domain.t_end) throw ConfigError("sampler: lt_max exceeds the horizon");
}

QuadRule gauss_legendre(int points) {
  if (points < 1 || points > kMaxQuadPoints)
    throw ConfigError("gauss_legendre: number of points must be in [1, 32]");
  const int n = points;
  QuadRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  // Roots come in +/- pairs; compute the positive half and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // Derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const bool middle = (n % 2 == 1) && (i == n / 2);
    if (middle) x = 0.0;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  return rule;
}

double integrate_interval(const QuadRule& rule, double a, double b,
                          const std::function<double(double)>& f) {
  expects(a < b, "integrate_interval: need a < b");
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(mid + half * rule.nodes[q]);
  return half * sum;
}

double integrate_face_2d(const QuadRule& rule_x, const QuadRule& rule_y, const Rect& rect,
                         const std::function<double(double, double)>& f) {
  expects(rect.x_lo < rect.x_hi && rect.y_lo < rect.y_hi, "integrate_face_2d: degenerate rectangle");
  const double mx = 0.5 * (rect.x_lo + rect.x_hi);
  const double hx = 0.5 * (rect.x_hi - rect.x_lo);
  const double my = 0.5 * (rect.y_lo + rect.y_hi);
  const double hy = 0.5 * (rect.y_hi - rect.y_lo);
  double sum = 0.0;
  for (int p = 0; p < rule_x.size(); ++p) {
    const double x = mx + hx * rule_x.nodes[p];
    for (int q = 0; q < rule_y.size(); ++q) {
      sum += rule_x.weights[p] * rule_y.weights[q] * f(x, my + hy * rule_y.nodes[q]);
    }
  }
  return hx * hy * sum;
}

namespace {

double sample_length(double lo, double hi, Rng& rng) {
  if (lo == hi) return lo;
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  return std::clamp(std::exp(dist(rng)), lo, hi);
}

// Places an interval of the given length around a uniform centre, shifted
// back inside [lo, hi] when it sticks out.
std::pair<double, double> place(double lo, double hi, double length, Rng& rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  const double centre = dist(rng);
  double a = centre - 0.5 * length;
  double b = centre + 0.5 * length;
  if (a < lo) {
    a = lo;
    b = std::min(lo + length, hi);
  }
  if (b > hi) {
    b = hi;
    a = std::max(hi - length, lo);
  }
  return {a, b};
}

}  // namespace

std::vector<ControlVolume> sample_volumes(const Domain& domain, const SamplerConfig& config,
                                          Rng& rng) {
  domain.validate();
  config.validate(domain);
  std::vector<ControlVolume> volumes;
  volumes.reserve(config.n_volumes);
  for (int k = 0; k < config.n_volumes; ++k) {
    ControlVolume v;
    v.dim = domain.dim;
    for (int a = 0; a < domain.dim; ++a) {
      const double len = sample_length(config.lx_min, config.lx_max, rng);
      std::tie(v.x_lo[a], v.x_hi[a]) = place(domain.x_lo[a], domain.x_hi[a], len, rng);
    }
    const double len_t = sample_length(config.lt_min, config.lt_max, rng);
    std::tie(v.t_lo, v.t_hi) = place(0.0, domain.t_end, len_t, rng);
    volumes.push_back(v);
  }
  return volumes;
}

double Face::measure() const {
  double m = 1.0;
  for (int c = 0; c <= box.dim; ++c)
    if (c != axis) m *= box.hi(c) - box.lo(c);
  return m;
}

std::vector<Face> faces(const ControlVolume& volume) {
  volume.validate();
  std::vector<Face> out;
  out.reserve(2 * (volume.dim + 1));
  for (int axis = 0; axis <= volume.dim; ++axis) {
    for (int side : {-1, +1}) {
      Face f;
      f.axis = axis;
      f.side = side;
      f.box = volume;
      f.normal[axis] = static_cast<double>(side);
      out.push_back(f);
    }
  }
  return out;
}

FaceQuadrature face_quadrature(const Face& face, const QuadRule& rule) {
  const int coords = face.box.dim + 1;
  std::vector<int> free;
  for (int c = 0; c < coords; ++c)
    if (c != face.axis) free.push_back(c);
  int n = 1;
  for (std::size_t i = 0; i < free.size(); ++i) n *= rule.size();

  FaceQuadrature fq;
  fq.axis = face.axis;
  fq.side = face.side;
  fq.normal = face.normal;
  fq.points.resize(coords, n);
  fq.weights.assign(n, 1.0);
  const double fixed = face.fixed_value();
  for (int idx = 0; idx < n; ++idx) {
    int rem = idx;
    fq.points(face.axis, idx) = fixed;
    for (int c : free) {
      const int q = rem % rule.size();
      rem /= rule.size();
      const double mid = 0.5 * (face.box.lo(c) + face.box.hi(c));
      const double half = 0.5 * (face.box.hi(c) - face.box.lo(c));
      fq.points(c, idx) = mid + half * rule.nodes[q];
      fq.weights[idx] *= half * rule.weights[q];
    }
  }
  return fq;
}

TvdCloud sample_tvd_cloud(const Domain& domain, int n_t, int n_x, Rng& rng) {
  domain.validate();
  if (n_t < 2 || n_x < 2) throw ConfigError("tvd cloud: need at least 2 time levels and 2 points");
  if (domain.dim != 1) throw ConfigError("tvd cloud: only one spatial dimension is supported");
  std::uniform_real_distribution<double> t_dist(0.0, domain.t_end);
  std::uniform_real_distribution<double> x_dist(domain.x_lo[0], domain.x_hi[0]);
  TvdCloud cloud;
  cloud.times.resize(n_t);
  cloud.x.resize(n_t);
  for (int j = 0; j < n_t; ++j) {
    cloud.times[j] = t_dist(rng);
    auto& xs = cloud.x[j];
    xs.resize(n_x);
    for (auto& x : xs) x = x_dist(rng);
    std::sort(xs.begin(), xs.end());
  }
  return cloud;
}

}  // namespace wepinn
