#pragma once

// Numeric function objects used by the quadrature-based paths.

#include "projdunkl/mpoly.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace projdunkl {

using Complex = std::complex<double>;

/// Smooth map R^N -> C with an analytic gradient.
struct TestFunction {
  std::string id;
  std::size_t dim = 1;
  std::function<Complex(std::span<const double>)> value;
  std::function<std::vector<Complex>(std::span<const double>)> gradient;
  double support_bound = std::numeric_limits<double>::infinity();
};

/// Compares the analytic gradient with central differences (step ~ 1e-5
/// scaled) and returns true when every component agrees to `rel_tol`.
bool gradient_consistent(const TestFunction& f, std::span<const double> x, double rel_tol = 1e-6);

/// Derivatives f(x), f'(x), ..., f^(order)(x) of a function of one variable.
using Jet1D = std::function<std::vector<Complex>(double x, int order)>;

/// One-variable function with derivatives up to `max_order` and support
/// contained in [lo, hi] (infinite bounds for non-compact support).
struct OneVarFunction {
  std::string id;
  Jet1D jet;
  int max_order = 64;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  Complex operator()(double x) const { return jet(x, 0)[0]; }
  std::vector<Complex> derivatives(double x, int order) const;
  double support_bound() const;
  bool compact() const;
};

/// Lifts a one-variable function to a rank-one TestFunction.
TestFunction as_test_function(const OneVarFunction& f);

/// Numeric form of an exact polynomial; the gradient is the exact derivative
/// polynomial evaluated in double precision.
TestFunction polynomial_function(const MPoly& p, std::string id = {});

/// exp(<c, x>) with complex c.
TestFunction exponential_function(std::vector<Complex> c, std::string id = {});

}  // namespace projdunkl
