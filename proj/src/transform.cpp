#include "projdunkl/transform.hpp"

#include "projdunkl/errors.hpp"
#include "projdunkl/intertwine.hpp"
#include "projdunkl/kernels.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace projdunkl {

namespace {

Complex legendre_sum(const std::function<Complex(double)>& g, double a, double b, const QuadratureRule& rule) {
  Complex s = 0;
  const double len = b - a;
  for (int i = 0; i < rule.order; ++i) s += rule.weights[i] * g(a + len * rule.nodes[i]);
  return s * len;
}

}  // namespace

void TransformRequest::validate() const {
  if (!(kappa >= 0)) throw std::invalid_argument("transform: kappa must be >= 0");
  if (!f.jet) throw std::invalid_argument("transform: no function supplied");
  if (!f.compact()) throw std::invalid_argument("transform: " + f.id + " has no finite support bound");
  if (lambda_grid.empty()) throw std::invalid_argument("transform: lambda grid is empty");
  if (order < 2 || order > kMaxQuadratureOrder) throw std::invalid_argument("transform: order outside [2, 200]");
  if (panel_budget < 1) throw std::invalid_argument("transform: panel budget must be positive");
}

Complex integrate_oscillatory(const std::function<Complex(double)>& g, double lo, double hi, double lambda,
                              const TransformRequest& opts) {
  if (!(hi > lo)) return 0;
  const auto rule = legendre_rule(opts.order);
  const double max_width = std::numbers::pi / std::max(1.0, std::abs(lambda));
  const int initial = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
  if (initial > opts.panel_budget) {
    throw ConvergenceError("transform quadrature: panel budget " + std::to_string(opts.panel_budget) +
                           " below the " + std::to_string(initial) + " panels needed at lambda = " +
                           std::to_string(lambda));
  }
  const double width = (hi - lo) / initial;
  struct Panel {
    double a, b;
    Complex whole;
  };
  std::vector<Panel> stack;
  for (int p = initial - 1; p >= 0; --p) {
    const double a = lo + p * width, b = (p == initial - 1) ? hi : lo + (p + 1) * width;
    stack.push_back({a, b, legendre_sum(g, a, b, *rule)});
  }
  Complex total = 0;
  long used = initial;
  while (!stack.empty()) {
    Panel pn = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (pn.a + pn.b);
    const Complex left = legendre_sum(g, pn.a, mid, *rule);
    const Complex right = legendre_sum(g, mid, pn.b, *rule);
    if (std::abs(left + right - pn.whole) <= opts.tolerance * (pn.b - pn.a)) {
      total += left + right;
      continue;
    }
    used += 2;
    if (used > opts.panel_budget) {
      throw ConvergenceError("transform quadrature: panel budget " + std::to_string(opts.panel_budget) +
                             " exceeded at lambda = " + std::to_string(lambda));
    }
    stack.push_back({mid, pn.b, right});
    stack.push_back({pn.a, mid, left});
  }
  return total;
}

Complex fourier_transform_at(const TransformRequest& req, double lambda) {
  const auto& f = req.f;
  return integrate_oscillatory([&](double x) { return f(x) * std::exp(Complex(0, lambda * x)); }, f.lo, f.hi,
                               lambda, req);
}

Complex kummer_transform_at(const TransformRequest& req, double lambda) {
  if (req.kappa == 0) return fourier_transform_at(req, lambda);
  const auto& f = req.f;
  const double kappa = req.kappa;
  return integrate_oscillatory(
      [&](double x) {
        const Complex fx = f(x);
        return fx == 0.0 ? Complex(0) : fx * bold_M(kappa, Complex(0, lambda * x));
      },
      f.lo, f.hi, lambda, req);
}

std::vector<Complex> kummer_transform(const TransformRequest& req) {
  req.validate();
  return transform_grid(req, Execution::Parallel);
}

std::vector<Complex> fourier_transform(const TransformRequest& req) {
  req.validate();
  TransformRequest r = req;
  r.kappa = 0;
  return transform_grid(r, Execution::Parallel);
}

double l1_norm(const OneVarFunction& f) {
  if (!f.compact()) throw std::invalid_argument("l1_norm: " + f.id + " has no finite support bound");
  TransformRequest opts;
  opts.f = f;
  return integrate_oscillatory([&](double x) { return Complex(std::abs(f(x))); }, f.lo, f.hi, 0.0, opts).real();
}

nlohmann::json FactorizationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    rows.push_back({{"lambda", lambda[i]},
                    {"direct", {direct[i].real(), direct[i].imag()}},
                    {"factored", {factored[i].real(), factored[i].imag()}}});
  }
  return {{"check", "factorization"}, {"kappa", kappa},          {"skipped", skipped},
          {"rows", rows},             {"max_discrepancy", max_discrepancy}};
}

FactorizationReport factorization_check(const TransformRequest& req, Fault fault) {
  req.validate();
  FactorizationReport rep;
  rep.kappa = req.kappa;
  rep.lambda = req.lambda_grid;
  if (req.kappa == 0) {
    rep.skipped = true;
    rep.direct = fourier_transform(req);
    rep.factored = rep.direct;
    return rep;
  }
  if (!(req.f.max_order >= 0)) throw std::invalid_argument("factorization: function has no values");
  rep.direct = kummer_transform(req);
  const double dual_kappa = fault == Fault::PerturbKappa ? req.kappa + 0.5 : req.kappa;
  const auto samples = dual_chi_samples(req.f, dual_kappa);
  for (double lambda : req.lambda_grid) {
    Complex s = 0;
    for (std::size_t i = 0; i < samples.x.size(); ++i) {
      s += samples.w[i] * samples.value[i] * std::exp(Complex(0, lambda * samples.x[i]));
    }
    rep.factored.push_back(s);
  }
  for (std::size_t i = 0; i < rep.lambda.size(); ++i) {
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(rep.direct[i] - rep.factored[i]));
  }
  return rep;
}

nlohmann::json DecayReport::to_json() const {
  return {{"check", "c0_decay"}, {"kappa", kappa},       {"lambda", lambda},
          {"magnitude", magnitude}, {"l1", l1},          {"factor", factor},
          {"monotone", monotone},   {"below_threshold", below_threshold}};
}

DecayReport c0_decay_check(const TransformRequest& req, double factor) {
  DecayReport rep;
  rep.kappa = req.kappa;
  rep.factor = factor;
  TransformRequest r = req;
  r.lambda_grid = rep.lambda;
  r.validate();
  for (const auto& v : kummer_transform(r)) rep.magnitude.push_back(std::abs(v));
  rep.l1 = l1_norm(req.f);
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.magnitude.size(); ++i) rep.monotone &= rep.magnitude[i] < rep.magnitude[i - 1];
  rep.below_threshold = rep.magnitude.back() < factor * rep.l1;
  return rep;
}

}  // namespace projdunkl
