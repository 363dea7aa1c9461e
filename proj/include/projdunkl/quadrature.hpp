#pragma once

// Gauss-Jacobi rules on [0,1] for the weight (1-t)^a t^b, a,b > -1.
// Nodes from the Jacobi matrix eigenvalues, polished by Newton steps on the
// three-term recurrence; weights from the closed form. Long double inside.

#include "projdunkl/rational.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace projdunkl {

inline constexpr int kMaxQuadratureOrder = 200;

struct QuadratureRule {
  double a = 0;  // exponent of (1-t)
  double b = 0;  // exponent of t
  int order = 0;
  std::vector<double> nodes;    // increasing, in (0,1)
  std::vector<double> weights;  // positive
  std::string label;            // exact kappa text when built from a rational kappa

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0) * 1.0) sum{};
    for (int i = 0; i < order; ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Uncached construction. Throws std::invalid_argument for a,b <= -1 or an
/// order outside [1, kMaxQuadratureOrder].
QuadratureRule gauss_jacobi(double a, double b, int order);

/// Cached rules; safe to call from several threads.
std::shared_ptr<const QuadratureRule> jacobi_rule(double a, double b, int order);
std::shared_ptr<const QuadratureRule> legendre_rule(int order);
/// Weight (1-t)^{kappa-1} on [0,1]; kappa > 0.
std::shared_ptr<const QuadratureRule> kappa_rule(const Rational& kappa, int order);
std::shared_ptr<const QuadratureRule> kappa_rule(double kappa, int order);

std::size_t quadrature_cache_size();
void clear_quadrature_cache();

/// {"kappa":"3/2","order":64,"nodes":[...],"weights":[...]} plus "a"/"b".
nlohmann::json to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(const nlohmann::json& j);
/// Dump every cached rule as a JSON array / load rules back into the cache.
nlohmann::json dump_quadrature_cache();
void load_quadrature_cache(const nlohmann::json& j);

/// Exact integral of t^k (1-t)^a t^b over [0,1], B(k+b+1, a+1), in long double.
long double beta_moment(double a, double b, int k);

}  // namespace projdunkl
