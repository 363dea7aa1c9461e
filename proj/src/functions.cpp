#include "projdunkl/functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace projdunkl {

bool gradient_consistent(const TestFunction& f, std::span<const double> x, double rel_tol) {
  if (x.size() != f.dim) throw std::invalid_argument("gradient_consistent: dimension mismatch");
  const auto g = f.gradient(x);
  double scale = std::abs(f.value(x));
  for (const auto& gk : g) scale = std::max(scale, std::abs(gk));
  scale = std::max(scale, 1e-300);
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t k = 0; k < f.dim; ++k) {
    const double h = 1e-5 * std::max(1.0, std::abs(x[k]));
    probe[k] = x[k] + h;
    Complex up = f.value(probe);
    probe[k] = x[k] - h;
    Complex down = f.value(probe);
    probe[k] = x[k];
    Complex fd = (up - down) / (2 * h);
    if (std::abs(fd - g[k]) > rel_tol * scale) return false;
  }
  return true;
}

std::vector<Complex> OneVarFunction::derivatives(double x, int order) const {
  if (order > max_order) {
    throw std::domain_error(id + ": only " + std::to_string(max_order) + " derivatives available, " +
                            std::to_string(order) + " requested");
  }
  auto d = jet(x, order);
  if (static_cast<int>(d.size()) < order + 1) throw std::logic_error(id + ": jet returned too few derivatives");
  return d;
}

double OneVarFunction::support_bound() const { return std::max(std::abs(lo), std::abs(hi)); }

bool OneVarFunction::compact() const { return std::isfinite(lo) && std::isfinite(hi); }

TestFunction as_test_function(const OneVarFunction& f) {
  TestFunction t;
  t.id = f.id;
  t.dim = 1;
  t.value = [f](std::span<const double> x) { return f.jet(x[0], 0)[0]; };
  t.gradient = [f](std::span<const double> x) { return std::vector<Complex>{f.jet(x[0], 1)[1]}; };
  t.support_bound = f.compact() ? f.support_bound() : std::numeric_limits<double>::infinity();
  return t;
}

TestFunction polynomial_function(const MPoly& p, std::string id) {
  std::vector<MPoly> grad;
  for (std::size_t j = 0; j < p.dim(); ++j) grad.push_back(partial_derivative(p, j));
  TestFunction t;
  t.id = id.empty() ? to_string(p) : std::move(id);
  t.dim = p.dim();
  t.value = [p](std::span<const double> x) { return poly_eval_numeric(p, x); };
  t.gradient = [grad](std::span<const double> x) {
    std::vector<Complex> out;
    out.reserve(grad.size());
    for (const auto& g : grad) out.push_back(poly_eval_numeric(g, x));
    return out;
  };
  return t;
}

TestFunction exponential_function(std::vector<Complex> c, std::string id) {
  TestFunction t;
  t.id = id.empty() ? "exp" : std::move(id);
  t.dim = c.size();
  auto value = [c](std::span<const double> x) {
    Complex s = 0;
    for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * x[j];
    return std::exp(s);
  };
  t.value = value;
  t.gradient = [c, value](std::span<const double> x) {
    Complex v = value(x);
    std::vector<Complex> out;
    for (const auto& cj : c) out.push_back(cj * v);
    return out;
  };
  return t;
}

}  // namespace projdunkl
