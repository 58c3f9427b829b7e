#pragma once

// Training-free property suite behind `wepinn validate`.

#include <functional>
#include <string>
#include <vector>

#include "wepinn/geometry.hpp"

namespace wepinn {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationOptions {
  /// Applied to every quadrature rule the suite builds (fault injection).
  std::function<void(QuadRule&)> quadrature_hook;
  /// Skip the finite-volume oracle comparisons (they take most of the time).
  bool skip_oracles = false;
};

std::vector<PropertyResult> run_validation(const ValidationOptions& options = {});

}  // namespace wepinn
