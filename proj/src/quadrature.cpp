#include "projdunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace projdunkl {

namespace {

using Real = long double;

// P_n^{(al,be)}(x) and P_{n-1}, standard normalization.
std::pair<Real, Real> jacobi_pair(int n, Real al, Real be, Real x) {
  Real p0 = 1;
  if (n == 0) return {p0, 0};
  Real p1 = (al + 1) + (al + be + 2) * (x - 1) / 2;
  for (int k = 2; k <= n; ++k) {
    Real s = 2 * k + al + be;
    Real c1 = 2 * k * (k + al + be) * (s - 2);
    Real c2 = (s - 1) * (s * (s - 2) * x + al * al - be * be);
    Real c3 = 2 * (k + al - 1) * (k + be - 1) * s;
    Real p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// P_n' from (s)(1-x^2) P_n' = n[(al-be) - s x] P_n + 2(n+al)(n+be) P_{n-1}, s = 2n+al+be.
Real jacobi_derivative(int n, Real al, Real be, Real x, Real pn, Real pn1) {
  Real s = 2 * n + al + be;
  return (n * ((al - be) - s * x) * pn + 2 * (n + al) * (n + be) * pn1) / (s * (1 - x * x));
}

using Key = std::tuple<double, double, int>;

struct Cache {
  std::shared_mutex mutex;
  std::map<Key, std::shared_ptr<const QuadratureRule>> rules;
};

Cache& cache() {
  static Cache c;
  return c;
}

std::string default_label(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  if (b == 0) {
    os << a + 1;
  } else {
    os << "a=" << a << ",b=" << b;
  }
  return os.str();
}

}  // namespace

QuadratureRule gauss_jacobi(double a, double b, int order) {
  if (!(a > -1) || !(b > -1)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw std::invalid_argument("gauss_jacobi: order " + std::to_string(order) + " outside [1, " +
                                std::to_string(kMaxQuadratureOrder) + "]");
  }
  // on [-1,1]: weight (1-x)^al (1+x)^be with t = (1+x)/2
  const Real al = a, be = b;
  const int m = order;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> diag(m), sub(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) {
    Real s = 2 * k + al + be;
    if (k == 0) {
      diag(k) = (be - al) / (al + be + 2);
    } else {
      diag(k) = (be * be - al * al) / (s * (s + 2));
    }
  }
  for (int k = 1; k < m; ++k) {
    Real s = 2 * k + al + be;
    Real v;
    if (k == 1) {
      v = 4 * (1 + al) * (1 + be) / ((2 + al + be) * (2 + al + be) * (3 + al + be));
    } else {
      v = 4 * k * (k + al) * (k + be) * (k + al + be) / (s * s * (s + 1) * (s - 1));
    }
    sub(k - 1) = std::sqrt(v);
  }
  std::vector<Real> x(m);
  if (m == 1) {
    x[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> solver;
    solver.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigen solver failed");
    for (int i = 0; i < m; ++i) x[i] = solver.eigenvalues()(i);
  }
  // log of Gamma(m+al+1)Gamma(m+be+1)/(Gamma(m+al+be+1) m!) 2^{al+be+1}
  const Real log_c = std::lgamma(m + al + 1) + std::lgamma(m + be + 1) - std::lgamma(m + al + be + 1) -
                     std::lgamma(Real(m + 1)) + (al + be + 1) * std::log(Real(2));
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.order = m;
  rule.label = default_label(a, b);
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    Real xi = x[i];
    Real dp = 0;
    for (int it = 0; it < 10; ++it) {
      auto [pn, pn1] = jacobi_pair(m, al, be, xi);
      dp = jacobi_derivative(m, al, be, xi, pn, pn1);
      Real step = pn / dp;
      xi -= step;
      if (std::abs(step) <= 4 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(xi))) break;
    }
    auto [pn, pn1] = jacobi_pair(m, al, be, xi);
    dp = jacobi_derivative(m, al, be, xi, pn, pn1);
    Real w = std::exp(log_c) / ((1 - xi * xi) * dp * dp);
    // to [0,1]: dt = dx/2, (1-t)^a t^b = 2^{-a-b} (1-x)^a (1+x)^b
    rule.nodes[i] = static_cast<double>((1 + xi) / 2);
    rule.weights[i] = static_cast<double>(w / std::pow(Real(2), al + be + 1));
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> jacobi_rule(double a, double b, int order) {
  auto& c = cache();
  Key key{a, b, order};
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.rules.find(key); it != c.rules.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi(a, b, order));
  std::unique_lock lock(c.mutex);
  return c.rules.emplace(key, std::move(rule)).first->second;
}

std::shared_ptr<const QuadratureRule> legendre_rule(int order) { return jacobi_rule(0, 0, order); }

std::shared_ptr<const QuadratureRule> kappa_rule(double kappa, int order) {
  if (!(kappa > 0)) throw std::invalid_argument("kappa_rule: kappa must be positive");
  return jacobi_rule(kappa - 1, 0, order);
}

std::shared_ptr<const QuadratureRule> kappa_rule(const Rational& kappa, int order) {
  if (kappa <= 0) throw std::invalid_argument("kappa_rule: kappa must be positive");
  auto& c = cache();
  Key key{to_double(kappa) - 1, 0.0, order};
  auto rule = kappa_rule(to_double(kappa), order);
  if (rule->label != to_string(kappa)) {
    auto relabeled = std::make_shared<QuadratureRule>(*rule);
    relabeled->label = to_string(kappa);
    std::unique_lock lock(c.mutex);
    c.rules[key] = relabeled;
    return relabeled;
  }
  return rule;
}

std::size_t quadrature_cache_size() {
  std::shared_lock lock(cache().mutex);
  return cache().rules.size();
}

void clear_quadrature_cache() {
  std::unique_lock lock(cache().mutex);
  cache().rules.clear();
}

nlohmann::json to_json(const QuadratureRule& rule) {
  return nlohmann::json{{"kappa", rule.label}, {"a", rule.a},         {"b", rule.b},
                        {"order", rule.order}, {"nodes", rule.nodes}, {"weights", rule.weights}};
}

QuadratureRule rule_from_json(const nlohmann::json& j) {
  QuadratureRule rule;
  rule.order = j.at("order").get<int>();
  rule.nodes = j.at("nodes").get<std::vector<double>>();
  rule.weights = j.at("weights").get<std::vector<double>>();
  if (static_cast<int>(rule.nodes.size()) != rule.order || static_cast<int>(rule.weights.size()) != rule.order) {
    throw std::invalid_argument("quadrature JSON: node/weight count does not match order");
  }
  const auto& k = j.at("kappa");
  rule.label = k.is_string() ? k.get<std::string>() : k.dump();
  if (j.contains("a")) {
    rule.a = j.at("a").get<double>();
    rule.b = j.value("b", 0.0);
  } else {
    rule.a = to_double(parse_rational(rule.label)) - 1;
    rule.b = 0;
  }
  return rule;
}

nlohmann::json dump_quadrature_cache() {
  std::shared_lock lock(cache().mutex);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, rule] : cache().rules) out.push_back(to_json(*rule));
  return out;
}

void load_quadrature_cache(const nlohmann::json& j) {
  std::vector<std::shared_ptr<const QuadratureRule>> rules;
  for (const auto& item : j) rules.push_back(std::make_shared<const QuadratureRule>(rule_from_json(item)));
  std::unique_lock lock(cache().mutex);
  for (auto& r : rules) cache().rules[Key{r->a, r->b, r->order}] = r;
}

long double beta_moment(double a, double b, int k) {
  Real x = k + b + 1, y = Real(a) + 1;
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

}  // namespace projdunkl
