#pragma once

#include <stdexcept>
#include <string>

namespace wepinn {

/// Invalid user-facing configuration (bad sizes, bounds, names).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A state outside the admissible set (rho <= 0, p <= 0, h <= 0) reached a
/// function that cannot evaluate it.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver failure or a numerically undefined quantity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative error requested against a reference with zero norm.
class ZeroNormError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Input outside what a solver handles (for example vacuum-generating data).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void expects(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

inline void expects(bool condition, const std::string& what) {
  if (!condition) throw ContractViolation(what);
}

}  // namespace wepinn
