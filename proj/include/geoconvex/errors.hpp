#pragma once

#include <stdexcept>
#include <string>

namespace geoconvex {

// Thrown when a metric callback returns something that is not symmetric
// positive definite at a queried point. Everything downstream (Christoffel
// symbols, norms, curvature) assumes an SPD metric, so this is fatal.
class DegenerateMetricError : public std::runtime_error {
 public:
  explicit DegenerateMetricError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace geoconvex
