#pragma once

#include <stdexcept>

namespace projdunkl {

/// A series or adaptive quadrature did not reach its tolerance within budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace projdunkl
