#include "projdunkl/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace projdunkl {

TaylorSeries TaylorSeries::variable(int order, double x0) {
  TaylorSeries s(order, x0);
  if (order >= 1) s[1] = 1;
  return s;
}

std::vector<Complex> TaylorSeries::derivatives() const {
  std::vector<Complex> d(c_.size());
  double fact = 1;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    d[k] = c_[k] * fact;
  }
  return d;
}

TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) {
  for (int k = 0; k <= a.order(); ++k) a[k] += b[k];
  return a;
}

TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) {
  for (int k = 0; k <= a.order(); ++k) a[k] -= b[k];
  return a;
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  TaylorSeries out(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    out[k] = s;
  }
  return out;
}

TaylorSeries operator*(double s, TaylorSeries a) {
  for (int k = 0; k <= a.order(); ++k) a[k] *= s;
  return a;
}

TaylorSeries reciprocal(const TaylorSeries& a) {
  if (a[0] == 0) throw std::domain_error("TaylorSeries: reciprocal of a series with zero constant term");
  TaylorSeries b(a.order());
  b[0] = 1 / a[0];
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s / a[0];
  }
  return b;
}

TaylorSeries exp(const TaylorSeries& a) {
  TaylorSeries e(a.order());
  e[0] = std::exp(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += j * a[j] * e[k - j];
    e[k] = s / k;
  }
  return e;
}

namespace {

std::vector<Complex> zeros(int order) { return std::vector<Complex>(order + 1, 0.0); }

// exp(-1/(1-y^2)) with y = (x - center)/half_width.
std::vector<Complex> bump_jet(double x, int order, double center, double half_width) {
  const double y0 = (x - center) / half_width;
  if (std::abs(y0) >= 1) return zeros(order);
  TaylorSeries y(order, y0);
  if (order >= 1) y[1] = 1 / half_width;
  TaylorSeries u = TaylorSeries(order, 1.0) - y * y;
  return exp(-1.0 * reciprocal(u)).derivatives();
}

// exp(-1/y) for y > 0, else 0, as a series.
TaylorSeries psi(const TaylorSeries& y) {
  if (y[0] <= 0) return TaylorSeries(y.order());
  return exp(-1.0 * reciprocal(y));
}

// Smooth step: 0 for y <= 0, 1 for y >= 1.
TaylorSeries step(const TaylorSeries& y) {
  TaylorSeries one(y.order(), 1.0);
  TaylorSeries a = psi(y);
  TaylorSeries b = psi(one - y);
  return a * reciprocal(a + b);
}

constexpr double kIndicatorWidth = 0.25;

std::vector<Complex> smooth_indicator_jet(double x, int order) {
  const double w = kIndicatorWidth;
  if (x <= 1 - w || x >= 3 + w) return zeros(order);
  TaylorSeries rise(order, (x - (1 - w)) / w);
  TaylorSeries fall(order, ((3 + w) - x) / w);
  if (order >= 1) {
    rise[1] = 1 / w;
    fall[1] = -1 / w;
  }
  return (step(rise) * step(fall)).derivatives();
}

std::vector<Complex> gaussian_jet(double x, int order) {
  if (std::abs(x) > 8) return zeros(order);
  TaylorSeries t = TaylorSeries::variable(order, x);
  return exp(-0.5 * (t * t)).derivatives();
}

}  // namespace

OneVarFunction catalog_function(std::string_view name) {
  OneVarFunction f;
  f.id = std::string(name);
  if (name == "exp") {
    f.jet = [](double x, int order) { return std::vector<Complex>(order + 1, std::exp(x)); };
  } else if (name == "bump") {
    f.jet = [](double x, int order) { return bump_jet(x, order, 0.0, 1.0); };
    f.lo = -1;
    f.hi = 1;
  } else if (name == "bump_shifted") {
    f.jet = [](double x, int order) { return bump_jet(x, order, 0.5, 1.5); };
    f.lo = -1;
    f.hi = 2;
  } else if (name == "smooth_indicator") {
    f.jet = smooth_indicator_jet;
    f.lo = 1 - kIndicatorWidth;
    f.hi = 3 + kIndicatorWidth;
  } else if (name == "gaussian") {
    f.jet = gaussian_jet;
    f.lo = -8;
    f.hi = 8;
  } else if (name == "indicator") {
    f.jet = [](double x, int order) {
      auto d = zeros(order);
      d[0] = (x >= -1 && x <= 1) ? 1.0 : 0.0;
      return d;
    };
    f.max_order = 0;
    f.lo = -1;
    f.hi = 1;
  } else {
    throw std::invalid_argument("unknown catalog function '" + std::string(name) +
                                "' (expected exp, bump, bump_shifted, smooth_indicator, gaussian, indicator)");
  }
  return f;
}

std::vector<std::string> catalog_names() {
  return {"exp", "bump", "bump_shifted", "smooth_indicator", "gaussian", "indicator"};
}

std::vector<std::string> smooth_compact_names() { return {"bump", "bump_shifted", "smooth_indicator"}; }

}  // namespace projdunkl
