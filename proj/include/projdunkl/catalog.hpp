#pragma once

// Named one-variable test functions with exact jets (Taylor arithmetic).
//   exp               e^x
//   bump              exp(-1/(1-x^2)) on (-1,1)
//   bump_shifted      bump((x-1/2)/(3/2)), support (-1,2)
//   smooth_indicator  1 on [1,3], smooth transition of width 1/4 on each side
//   gaussian          exp(-x^2/2) truncated to [-8,8]
//   indicator         1 on [-1,1], 0 elsewhere (not smooth)

#include "projdunkl/functions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace projdunkl {

/// Throws std::invalid_argument naming the unknown function.
OneVarFunction catalog_function(std::string_view name);
std::vector<std::string> catalog_names();
/// Compactly supported and C^infinity (the test class for the dual operator).
std::vector<std::string> smooth_compact_names();

/// Truncated Taylor coefficients a_0..a_R of a function at a point, with the
/// arithmetic needed to build jets of smooth compositions.
class TaylorSeries {
 public:
  explicit TaylorSeries(int order, double constant = 0) : c_(order + 1, 0.0) { c_[0] = constant; }
  /// x0 + h as a series in h.
  static TaylorSeries variable(int order, double x0);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  /// k! a_k for k = 0..order.
  std::vector<Complex> derivatives() const;

  friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b);
  friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b);
  friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
  friend TaylorSeries operator*(double s, TaylorSeries a);

 private:
  std::vector<double> c_;
};

TaylorSeries reciprocal(const TaylorSeries& a);
TaylorSeries exp(const TaylorSeries& a);

}  // namespace projdunkl
