#pragma once

#include <Eigen/Core>
#include <functional>
#include <initializer_list>
#include <random>

#include "wepinn/models.hpp"
#include "wepinn/network.hpp"

namespace testing_support {

inline wepinn::State vec(std::initializer_list<double> v) {
  wepinn::State s(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) s[i++] = x;
  return s;
}

// Central-difference gradient of a scalar function of a vector.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (f(p) - f(m)) / (2.0 * h);
  }
  return g;
}

inline double rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// Glorot init perturbed with Gaussian noise so that biases are nonzero too.
inline wepinn::NetworkParams random_params(std::vector<int> sizes, std::uint64_t seed, double sigma = 0.3) {
  wepinn::NetworkParams p(sizes);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, sigma);
  Eigen::VectorXd f(p.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = n(rng);
  p.set_flat(f);
  return p;
}

}  // namespace testing_support
