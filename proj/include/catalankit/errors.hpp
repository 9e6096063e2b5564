#pragma once

#include <stdexcept>

namespace catalankit {

// An iterative method exhausted its evaluation or term budget.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The integrand produced a NaN.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catalankit
