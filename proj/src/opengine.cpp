#include "projdunkl/opengine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace projdunkl {

namespace {

double norm(std::span<const double> v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// (p - p o tau) / <x, alpha> with tau given explicitly as a linear map.
MPoly projection_difference(const MPoly& p, const LinearMap& tau, const RationalVector& alpha) {
  return divide_by_linear_form(p - compose_linear(p, tau), alpha);
}

// Projection onto alpha's hyperplane for a pair alpha = e_{2j-1} - e_{2j}:
// both coordinates of the pair become their average.
LinearMap pair_average_map(std::size_t N, std::size_t j) {
  std::vector<std::vector<Rational>> rows(N, std::vector<Rational>(N));
  for (std::size_t i = 0; i < N; ++i) rows[i][i] = 1;
  const std::size_t a = 2 * j, b = 2 * j + 1;
  rows[a][a] = rows[a][b] = rows[b][a] = rows[b][b] = Rational(1, 2);
  return LinearMap(std::move(rows));
}

std::optional<MPoly> divide_by_variable_power(const MPoly& p, std::size_t j, int power) {
  MPoly out(p.dim());
  for (const auto& [e, c] : p.terms()) {
    if (e.e[j] < power) return std::nullopt;
    Exponent d = e;
    d.e[j] = static_cast<std::uint8_t>(d.e[j] - power);
    out.add_term(d, c);
  }
  return out;
}

}  // namespace

ProjectionDunklOperator::ProjectionDunklOperator(OrthogonalSubsystem subsystem, RationalVector xi)
    : subsystem_(std::move(subsystem)), xi_(std::move(xi)) {
  if (xi_.dim() != subsystem_.dim()) {
    throw std::invalid_argument("operator direction has dimension " + std::to_string(xi_.dim()) +
                                ", subsystem has " + std::to_string(subsystem_.dim()));
  }
}

MPoly apply_T_raw(const MPoly& p, const RationalVector& xi, std::span<const RationalVector> roots,
                  std::span<const Rational> kappas) {
  if (p.dim() != xi.dim()) throw std::invalid_argument("apply_T: polynomial/direction dimension mismatch");
  if (roots.size() != kappas.size()) throw std::invalid_argument("apply_T: roots/multiplicities count mismatch");
  MPoly out = directional_derivative(p, xi);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Rational weight = kappas[i] * dot(roots[i], xi);
    if (weight == 0) continue;
    out += weight * divided_difference(p, roots[i]);
  }
  return out;
}

MPoly apply_T_poly(const ProjectionDunklOperator& op, const MPoly& p) {
  if (p.dim() != op.subsystem().dim()) throw std::invalid_argument("apply_T_poly: dimension mismatch");
  return apply_T_raw(p, op.xi(), op.subsystem().roots(), op.subsystem().kappas());
}

MPoly apply_T_decomposed(const ProjectionDunklOperator& op, const MPoly& p) {
  const auto& s = op.subsystem();
  auto parts = decompose_xi(op.xi(), s);
  MPoly out = directional_derivative(p, parts.residual);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (parts.coefficients[i] == 0) continue;
    out += parts.coefficients[i] * apply_T_raw(p, s.root(i), s.roots(), s.kappas());
  }
  return out;
}

MPoly apply_T_A_coordinates(std::size_t N, std::span<const Rational> kappas, const RationalVector& xi,
                            const MPoly& p) {
  if (kappas.size() != N / 2 || xi.dim() != N || p.dim() != N) {
    throw std::invalid_argument("apply_T_A_coordinates: shape mismatch");
  }
  const std::size_t pairs = N / 2;
  std::vector<Rational> xi_pair(pairs);
  RationalVector xi_hat = xi;
  std::vector<MPoly> rho;
  for (std::size_t j = 0; j < pairs; ++j) {
    auto alpha = RationalVector::unit(N, 2 * j) - RationalVector::unit(N, 2 * j + 1);
    xi_pair[j] = (xi[2 * j] - xi[2 * j + 1]) / 2;
    xi_hat -= xi_pair[j] * alpha;
    rho.push_back(projection_difference(p, pair_average_map(N, j), alpha));
  }
  MPoly out = directional_derivative(p, xi_hat);
  for (std::size_t i = 1; i <= 2 * pairs; ++i) {
    const std::size_t j = (i + 1) / 2 - 1;
    const int sign = (i % 2 == 1) ? 1 : -1;  // (-1)^{i+1}
    // T_i = d_i - (-1)^i kappa_j rho_j, and -(-1)^i = (-1)^{i+1}
    MPoly Ti = partial_derivative(p, i - 1) + Rational(sign) * kappas[j] * rho[j];
    out += Rational(sign) * xi_pair[j] * Ti;
  }
  return out;
}

MPoly apply_T_B_coordinates(std::size_t N, std::span<const Rational> kappas_plus,
                            std::span<const Rational> kappas_minus, const RationalVector& xi, const MPoly& p) {
  if (kappas_plus.size() != N / 2 || kappas_minus.size() != N / 2 || xi.dim() != N || p.dim() != N) {
    throw std::invalid_argument("apply_T_B_coordinates: shape mismatch");
  }
  const std::size_t pairs = N / 2;
  std::vector<Rational> xi_plus(pairs), xi_minus(pairs);
  std::vector<MPoly> rho_plus, rho_minus;
  for (std::size_t j = 0; j < pairs; ++j) {
    auto a = RationalVector::unit(N, 2 * j);
    auto b = RationalVector::unit(N, 2 * j + 1);
    auto alpha_plus = a + b;
    auto alpha_minus = a - b;
    xi_plus[j] = (xi[2 * j] + xi[2 * j + 1]) / 2;
    xi_minus[j] = (xi[2 * j] - xi[2 * j + 1]) / 2;
    rho_plus.push_back(projection_difference(p, LinearMap::projection(alpha_plus), alpha_plus));
    rho_minus.push_back(projection_difference(p, LinearMap::projection(alpha_minus), alpha_minus));
  }
  MPoly out(N);
  if (N % 2 == 1) out = xi[N - 1] * partial_derivative(p, N - 1);
  for (std::size_t i = 1; i <= 2 * pairs; ++i) {
    const std::size_t j = (i + 1) / 2 - 1;
    const int sign = (i % 2 == 1) ? 1 : -1;  // (-1)^{i+1}
    MPoly Ti = partial_derivative(p, i - 1) + Rational(sign) * kappas_minus[j] * rho_minus[j] +
               kappas_plus[j] * rho_plus[j];
    out += (xi_plus[j] + Rational(sign) * xi_minus[j]) * Ti;
  }
  return out;
}

Complex apply_T_numeric_raw(const TestFunction& f, std::span<const double> x, std::span<const double> xi,
                            std::span<const std::vector<double>> roots, std::span<const double> kappas) {
  if (x.size() != f.dim || xi.size() != f.dim) throw std::invalid_argument("apply_T_numeric: dimension mismatch");
  for (double c : x) {
    if (!std::isfinite(c)) throw std::domain_error("apply_T_numeric: non-finite evaluation point");
  }
  const auto grad = f.gradient(x);
  Complex result = 0;
  for (std::size_t j = 0; j < f.dim; ++j) result += grad[j] * xi[j];
  const Complex fx = f.value(x);
  const double xnorm = norm(x);
  std::vector<double> tx(x.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& alpha = roots[i];
    const double weight = kappas[i] * dot(alpha, xi);
    if (weight == 0) continue;
    const double pairing = dot(x, alpha);
    const double a2 = dot(alpha, alpha);
    for (std::size_t j = 0; j < x.size(); ++j) tx[j] = x[j] - pairing / a2 * alpha[j];
    Complex quotient;
    if (std::abs(pairing) <= kHyperplaneTolerance * xnorm * std::sqrt(a2)) {
      // limit of the divided difference: derivative along alpha at tau x
      const auto gt = f.gradient(tx);
      Complex d = 0;
      for (std::size_t j = 0; j < x.size(); ++j) d += gt[j] * alpha[j];
      quotient = d / a2;
    } else {
      quotient = (fx - f.value(tx)) / pairing;
    }
    result += weight * quotient;
  }
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw std::domain_error("apply_T_numeric: " + f.id + " is not finite near the evaluation point");
  }
  return result;
}

Complex apply_T_numeric(const ProjectionDunklOperator& op, const TestFunction& f, std::span<const double> x) {
  const auto& s = op.subsystem();
  if (f.dim != s.dim()) throw std::invalid_argument("apply_T_numeric: function/operator dimension mismatch");
  std::vector<std::vector<double>> roots;
  std::vector<double> kappas;
  for (std::size_t i = 0; i < s.size(); ++i) {
    roots.push_back(s.root(i).to_doubles());
    kappas.push_back(s.kappa(i).get_d());
  }
  const auto xi = op.xi().to_doubles();
  return apply_T_numeric_raw(f, x, xi, roots, kappas);
}

MPoly commutator_poly(const ProjectionDunklOperator& first, const ProjectionDunklOperator& second, const MPoly& p) {
  if (!(first.subsystem() == second.subsystem())) {
    throw std::invalid_argument("commutator_poly: operators use different subsystems or multiplicities");
  }
  return apply_T_poly(first, apply_T_poly(second, p)) - apply_T_poly(second, apply_T_poly(first, p));
}

MPoly one_var_T(const Rational& kappa, const MPoly& p) {
  if (p.dim() != 1) throw std::invalid_argument("one_var_T: polynomial must be in one variable");
  const RationalVector e1 = RationalVector::unit(1, 0);
  const Rational k[] = {kappa};
  const RationalVector roots[] = {e1};
  return apply_T_raw(p, e1, roots, k);
}

Complex one_var_T(double kappa, const OneVarFunction& f, double x) {
  if (!std::isfinite(x)) throw std::domain_error("one_var_T: non-finite evaluation point");
  if (std::abs(x) <= kHyperplaneTolerance) {
    // f'(x) + kappa f'(0): the x -> 0 limit, exact at x = 0
    return f.derivatives(x, 1)[1] + kappa * f.derivatives(0.0, 1)[1];
  }
  const auto d = f.derivatives(x, 1);
  const Complex f0 = f.derivatives(0.0, 0)[0];
  return d[1] + kappa * (d[0] - f0) / x;
}

Complex one_var_T_squared(double kappa, const OneVarFunction& f, double x) {
  if (!std::isfinite(x)) throw std::domain_error("one_var_T_squared: non-finite evaluation point");
  if (std::abs(x) < 1e-3) {
    // T^2 x^n = (n+kappa)(n-1+kappa) x^{n-2}; Taylor coefficients at 0
    const int order = std::min(f.max_order, 10);
    if (order < 2) throw std::domain_error(f.id + ": T^2 needs two derivatives");
    const auto d0 = f.derivatives(0.0, order);
    Complex sum = 0;
    double factorial = 1, power = 1;
    for (int n = 2; n <= order; ++n) {
      factorial *= n;
      sum += (n + kappa) * (n - 1 + kappa) * d0[n] / factorial * power;
      power *= x;
    }
    return sum;
  }
  const auto d = f.derivatives(x, 2);
  const auto d0 = f.derivatives(0.0, 1);
  return d[2] + 2 * kappa / x * d[1] + kappa * (kappa - 1) * (d[0] - d0[0]) / (x * x) -
         kappa * (kappa + 1) / x * d0[1];
}

LaplacianResult laplacian_direct(std::span<const Rational> kappas, const MPoly& p, Fault fault) {
  const std::size_t N = p.dim();
  if (kappas.size() != N) throw std::invalid_argument("laplacian_direct: one multiplicity per coordinate required");
  std::vector<RationalVector> roots;
  for (std::size_t j = 0; j < N; ++j) roots.push_back(RationalVector::unit(N, j));

  MPoly twice(N);
  for (std::size_t j = 0; j < N; ++j) {
    twice += apply_T_raw(apply_T_raw(p, roots[j], roots, kappas), roots[j], roots, kappas);
  }

  std::optional<MPoly> expanded = MPoly(N);
  for (std::size_t j = 0; j < N && expanded; ++j) {
    const Rational& k = kappas[j];
    const LinearMap tau = LinearMap::projection(roots[j]);
    MPoly dj = partial_derivative(p, j);
    *expanded += partial_derivative(dj, j);
    MPoly xj = MPoly::variable(N, j);
    MPoly first = 2 * k * dj;
    if (fault != Fault::DropProjection) first -= (k * k + k) * compose_linear(dj, tau);
    MPoly numerator = xj * first + (k * k - k) * (p - compose_linear(p, tau));
    auto term = divide_by_variable_power(numerator, j, 2);
    if (!term) {
      expanded.reset();
      break;
    }
    *expanded += *term;
  }
  return LaplacianResult{std::move(twice), std::move(expanded)};
}

nlohmann::json commutator_record(const OrthogonalSubsystem& subsystem, const RationalVector& xi,
                                 const RationalVector& eta, int degree, const std::optional<MPoly>& witness) {
  nlohmann::json j;
  j["check"] = "commutator";
  j["subsystem"] = to_json(subsystem);
  j["xi"] = to_string(xi);
  j["eta"] = to_string(eta);
  j["degree"] = degree;
  j["result"] = witness ? "nonzero" : "zero";
  j["witness"] = witness ? nlohmann::json(to_string(*witness)) : nlohmann::json(nullptr);
  return j;
}

}  // namespace projdunkl
