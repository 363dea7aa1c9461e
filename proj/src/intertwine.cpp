#include "projdunkl/intertwine.hpp"

#include "projdunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace projdunkl {

namespace {

void require_positive_kappas(std::span<const Rational> kappas) {
  for (const auto& k : kappas) {
    if (k <= 0) throw std::invalid_argument("intertwining operator needs kappa > 0, got " + to_string(k));
  }
}

// (1/|alpha|^2) <x, alpha> as a polynomial.
MPoly pairing_coordinate(const RationalVector& alpha) {
  return Rational(1 / norm2(alpha)) * MPoly::linear_form(alpha);
}

// Gauss-Legendre sum of f over [a,b].
template <class F>
Complex legendre_panel(F&& f, double a, double b, int order) {
  const auto rule = legendre_rule(order);
  const double len = b - a;
  Complex s = 0;
  for (int i = 0; i < rule->order; ++i) s += rule->weights[i] * f(a + len * rule->nodes[i]);
  return s * len;
}

}  // namespace

RationalVector h_map(std::span<const Rational> t, const RationalVector& x, const OrthogonalSubsystem& s) {
  if (t.size() != s.size()) throw std::invalid_argument("h_map: t must have one entry per root");
  if (x.dim() != s.dim()) throw std::invalid_argument("h_map: dimension mismatch");
  RationalVector out = x;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto& a = s.root(j);
    out += Rational((t[j] - 1) * dot(x, a) / norm2(a)) * a;
  }
  return out;
}

std::vector<double> h_map(std::span<const double> t, std::span<const double> x, const OrthogonalSubsystem& s) {
  if (t.size() != s.size()) throw std::invalid_argument("h_map: t must have one entry per root");
  if (x.size() != s.dim()) throw std::invalid_argument("h_map: dimension mismatch");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto a = s.root(j).to_doubles();
    double xa = 0, aa = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      xa += x[k] * a[k];
      aa += a[k] * a[k];
    }
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += (t[j] - 1) * xa / aa * a[k];
  }
  return out;
}

MPoly chi_tilde_raw(const MPoly& p, std::span<const RationalVector> roots, std::span<const Rational> kappas) {
  require_positive_kappas(kappas);
  MPoly q = p;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const auto& alpha = roots[j];
    const LinearMap tau = LinearMap::projection(alpha);
    const MPoly c = pairing_coordinate(alpha);
    MPoly out(q.dim());
    MPoly deriv = q;
    MPoly c_power = MPoly::constant(q.dim(), 1);
    Rational poch = 1;
    for (int k = 0; !deriv.is_zero(); ++k) {
      if (k > 0) {
        poch *= kappas[j] + k;
        c_power = c_power * c;
      }
      out += Rational(1 / poch) * (c_power * compose_linear(deriv, tau));
      deriv = directional_derivative(deriv, alpha);
    }
    q = std::move(out);
  }
  return q;
}

ScaledChi chi_poly_scaled(const MPoly& p, const OrthogonalSubsystem& s) {
  if (p.dim() != s.dim()) throw std::invalid_argument("chi_poly_scaled: dimension mismatch");
  GammaRatio scale(1);
  for (const auto& k : s.kappas()) {
    if (k <= 0) throw std::invalid_argument("intertwining operator needs kappa > 0, got " + to_string(k));
    scale *= GammaRatio::inverse_gamma(k + 1);
  }
  return ScaledChi{chi_tilde_raw(p, s.roots(), s.kappas()), scale};
}

MPoly chi_tilde_by_substitution(const MPoly& p, const OrthogonalSubsystem& s) {
  require_positive_kappas(s.kappas());
  const std::size_t N = s.dim(), n = s.size();
  if (p.dim() != N) throw std::invalid_argument("chi_tilde_by_substitution: dimension mismatch");
  if (N + n > kMaxVariables) throw std::invalid_argument("chi_tilde_by_substitution: too many variables");
  const std::size_t M = N + n;
  // x_k -> x_k + sum_j (t_j - 1) c_j(x) alpha_{j,k}, all in M variables
  std::vector<MPoly> images;
  for (std::size_t k = 0; k < N; ++k) images.push_back(MPoly::variable(M, k));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& a = s.root(j);
    std::vector<Rational> padded(M);
    for (std::size_t k = 0; k < N; ++k) padded[k] = a[k] / norm2(a);
    MPoly c = MPoly::linear_form(RationalVector(padded));
    MPoly tj_minus_one = MPoly::variable(M, N + j) - MPoly::constant(M, 1);
    MPoly shift = tj_minus_one * c;
    for (std::size_t k = 0; k < N; ++k) {
      if (a[k] != 0) images[k] += a[k] * shift;
    }
  }
  MPoly expanded = substitute(p, images);
  MPoly out(N);
  for (const auto& [e, coef] : expanded.terms()) {
    Rational c = coef;
    Exponent x_part;
    for (std::size_t k = 0; k < N; ++k) x_part.e[k] = e.e[k];
    for (std::size_t j = 0; j < n; ++j) {
      const int m = e.e[N + j];
      c *= factorial(m) / pochhammer(s.kappa(j) + 1, m);
    }
    out.add_term(x_part, c);
  }
  return out;
}

Complex chi_numeric_raw(const TestFunction& f, std::span<const std::vector<double>> roots,
                        std::span<const double> kappas, std::span<const double> x, int order) {
  if (order < 1) throw std::invalid_argument("chi_numeric: quadrature order must be >= 1");
  if (x.size() != f.dim) throw std::invalid_argument("chi_numeric: dimension mismatch");
  const std::size_t n = roots.size();
  std::vector<std::shared_ptr<const QuadratureRule>> rules;
  std::vector<double> c(n);
  double norm = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(kappas[j] > 0)) throw std::invalid_argument("chi_numeric: kappa must be positive");
    rules.push_back(kappa_rule(kappas[j], order));
    norm *= std::tgamma(kappas[j]);
    double xa = 0, aa = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      xa += x[k] * roots[j][k];
      aa += roots[j][k] * roots[j][k];
    }
    c[j] = xa / aa;
  }
  std::vector<int> idx(n, 0);
  std::vector<double> point(x.size());
  Complex sum = 0;
  while (true) {
    double w = 1;
    std::copy(x.begin(), x.end(), point.begin());
    for (std::size_t j = 0; j < n; ++j) {
      const double t = rules[j]->nodes[idx[j]];
      w *= rules[j]->weights[idx[j]];
      for (std::size_t k = 0; k < x.size(); ++k) point[k] += (t - 1) * c[j] * roots[j][k];
    }
    sum += w * f.value(point);
    std::size_t j = 0;
    while (j < n && ++idx[j] == order) idx[j++] = 0;
    if (j == n) break;
  }
  return sum / norm;
}

Complex chi_numeric(const TestFunction& f, const OrthogonalSubsystem& s, std::span<const double> x, int order) {
  if (f.dim != s.dim()) throw std::invalid_argument("chi_numeric: function/subsystem dimension mismatch");
  std::vector<std::vector<double>> roots;
  std::vector<double> kappas;
  for (std::size_t j = 0; j < s.size(); ++j) {
    roots.push_back(s.root(j).to_doubles());
    kappas.push_back(to_double(s.kappa(j)));
  }
  return chi_numeric_raw(f, roots, kappas, x, order);
}

GammaPoly ek_I(const GammaPoly& p, const Rational& gamma, const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("Erdelyi-Kober integral needs delta >= 0, got " + to_string(delta));
  if (delta == 0) return p;
  GammaPoly out;
  for (const auto& [m, c] : p.terms()) {
    Rational top = gamma + m + 1;
    if (top <= 0) {
      throw std::domain_error("Erdelyi-Kober integral diverges on x^" + std::to_string(m) + " for gamma = " +
                              to_string(gamma));
    }
    out.set(m, c * GammaRatio(1, {top}, {top + delta}));
  }
  return out;
}

GammaPoly euler_shift(const GammaPoly& p, const Rational& c) {
  GammaPoly out;
  for (const auto& [m, coef] : p.terms()) out.set(m, coef * GammaRatio(c + m));
  return out;
}

GammaPoly ek_D(const GammaPoly& p, const Rational& gamma, const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("Erdelyi-Kober inverse needs delta >= 0, got " + to_string(delta));
  const long n = ceil_to_long(delta);
  GammaPoly q = ek_I(p, gamma + delta, Rational(n) - delta);
  for (long k = 1; k <= n; ++k) q = euler_shift(q, gamma + k);
  return q;
}

GammaPoly chi_one_var(const GammaPoly& p, const Rational& kappa) {
  if (kappa <= 0) throw std::invalid_argument("chi needs kappa > 0, got " + to_string(kappa));
  return ek_I(p, 0, kappa);
}

GammaPoly chi_inverse_one_var(const GammaPoly& p, const Rational& kappa) {
  if (kappa <= 0) throw std::invalid_argument("chi inverse needs kappa > 0, got " + to_string(kappa));
  return ek_D(p, 0, kappa);
}

GammaPoly chi_inverse_variant(const GammaPoly& p, const Rational& kappa) {
  if (kappa <= 0) throw std::invalid_argument("chi inverse needs kappa > 0, got " + to_string(kappa));
  const long n = ceil_to_long(kappa);
  GammaPoly q = ek_I(p, kappa + 1, Rational(n) - kappa);
  for (long j = 1; j <= n; ++j) q = euler_shift(q, Rational(j));
  return q;
}

OneVarFunction ek_I_numeric(const OneVarFunction& g, double gamma, double delta, int order) {
  if (delta < 0) throw std::invalid_argument("Erdelyi-Kober integral needs delta >= 0");
  if (delta == 0) return g;
  if (!(gamma > -1)) throw std::domain_error("Erdelyi-Kober numeric path needs gamma > -1");
  auto rule = jacobi_rule(delta - 1, gamma, order);
  const double norm = std::tgamma(delta);
  OneVarFunction out;
  out.id = "I[" + std::to_string(gamma) + "," + std::to_string(delta) + "](" + g.id + ")";
  out.max_order = g.max_order;
  out.lo = std::min(g.lo, 0.0);
  out.hi = std::max(g.hi, 0.0);
  out.jet = [g, rule, norm](double x, int R) {
    // (I g)^(r)(x) = (1/Gamma(delta)) int (1-t)^{delta-1} t^{gamma} t^r g^(r)(t x) dt
    std::vector<Complex> d(R + 1, 0.0);
    for (int i = 0; i < rule->order; ++i) {
      const double t = rule->nodes[i];
      const auto gd = g.derivatives(t * x, R);
      double tr = rule->weights[i];
      for (int r = 0; r <= R; ++r) {
        d[r] += tr * gd[r];
        tr *= t;
      }
    }
    for (auto& v : d) v /= norm;
    return d;
  };
  return out;
}

OneVarFunction ek_D_numeric(const OneVarFunction& g, double gamma, double delta, int order) {
  if (delta < 0) throw std::invalid_argument("Erdelyi-Kober inverse needs delta >= 0");
  const int n = static_cast<int>(std::ceil(delta));
  if (g.max_order < n) throw std::domain_error(g.id + ": needs " + std::to_string(n) + " derivatives");
  OneVarFunction h = (n - delta > 0) ? ek_I_numeric(g, gamma + delta, n - delta, order) : g;
  OneVarFunction out;
  out.id = "D[" + std::to_string(gamma) + "," + std::to_string(delta) + "](" + g.id + ")";
  out.max_order = g.max_order - n;
  out.lo = h.lo;
  out.hi = h.hi;
  out.jet = [h, n, gamma](double x, int R) {
    auto d = h.derivatives(x, R + n);
    for (int k = 1; k <= n; ++k) {
      // (c + x d/dx) G, derivative r: (c + r) G^(r) + x G^(r+1)
      const double c = gamma + k;
      const int top = static_cast<int>(d.size()) - 1;
      std::vector<Complex> next(top);
      for (int r = 0; r < top; ++r) next[r] = (c + r) * d[r] + x * d[r + 1];
      d = std::move(next);
    }
    d.resize(R + 1);
    return d;
  };
  return out;
}

OneVarFunction chi_one_var_numeric(const OneVarFunction& g, double kappa, int order) {
  if (!(kappa > 0)) throw std::invalid_argument("chi needs kappa > 0");
  return ek_I_numeric(g, 0.0, kappa, order);
}

OneVarFunction chi_inverse_one_var_numeric(const OneVarFunction& g, double kappa, int order) {
  if (!(kappa > 0)) throw std::invalid_argument("chi inverse needs kappa > 0");
  return ek_D_numeric(g, 0.0, kappa, order);
}

Complex dual_chi(const OneVarFunction& g, double kappa, double x, int order) {
  if (!(kappa > 0)) throw std::invalid_argument("dual chi needs kappa > 0");
  if (!g.compact()) throw std::invalid_argument("dual chi needs a compactly supported function, " + g.id + " is not");
  if (x == 0 || !std::isfinite(x)) throw std::domain_error("dual chi is defined for finite x != 0");
  const double sign = x > 0 ? 1.0 : -1.0;
  const double a = std::abs(x);
  const double A = x > 0 ? g.hi : -g.lo;
  if (a >= A) return 0;
  const double max_width = A / 16;
  // first panel carries the (t-a)^{kappa-1} endpoint weight
  const double first_end = std::min({2 * a, A, a + max_width});
  const double L = first_end - a;
  const auto jrule = jacobi_rule(0.0, kappa - 1, order);
  Complex sum = 0;
  for (int i = 0; i < jrule->order; ++i) {
    const double t = a + L * jrule->nodes[i];
    sum += jrule->weights[i] * std::pow(t, -kappa) * g(sign * t);
  }
  sum *= std::pow(L, kappa);
  auto integrand = [&](double t) { return std::pow(t - a, kappa - 1) * std::pow(t, -kappa) * g(sign * t); };
  double lo = first_end;
  while (lo < A) {
    const double hi = std::min({2 * lo, A, lo + max_width});
    sum += legendre_panel(integrand, lo, hi, order);
    lo = hi;
  }
  return sum / std::tgamma(kappa);
}

DualSamples dual_chi_samples(const OneVarFunction& g, double kappa, int order) {
  if (!g.compact()) throw std::invalid_argument("dual chi needs a compactly supported function, " + g.id + " is not");
  DualSamples out;
  const auto rule = legendre_rule(order);
  for (double sign : {1.0, -1.0}) {
    const double A = sign > 0 ? g.hi : -g.lo;
    if (A <= 0) continue;
    std::vector<double> br{0.0};
    for (int k = 46; k >= 1; --k) br.push_back(std::ldexp(A, -k));
    for (int j = 1; j <= 16; ++j) br.push_back(A * j / 16.0);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
      const double lo = br[p], len = br[p + 1] - br[p];
      for (int i = 0; i < rule->order; ++i) {
        const double x = sign * (lo + len * rule->nodes[i]);
        out.x.push_back(x);
        out.w.push_back(len * rule->weights[i]);
        out.value.push_back(dual_chi(g, kappa, x));
      }
    }
  }
  return out;
}

DualityPairing duality_pairing(const MPoly& f, const OneVarFunction& g, const Rational& kappa) {
  if (f.dim() != 1) throw std::invalid_argument("duality_pairing: f must be a polynomial in one variable");
  if (!g.compact()) throw std::invalid_argument("duality_pairing: g must be compactly supported");
  // chi f exactly, Gamma coefficients evaluated at the end
  GammaPoly chif = chi_one_var(GammaPoly::from_poly(f), kappa);
  auto chi_value = [&](double x) {
    double s = 0;
    for (const auto& [m, c] : chif.terms()) s += c.to_double() * std::pow(x, m);
    return s;
  };
  DualityPairing out{0, 0};
  const int panels = 64;
  const double len = (g.hi - g.lo) / panels;
  for (int p = 0; p < panels; ++p) {
    out.chi_side += legendre_panel([&](double x) { return chi_value(x) * g(x); }, g.lo + p * len,
                                   g.lo + (p + 1) * len, 20);
  }
  const auto samples = dual_chi_samples(g, to_double(kappa));
  for (std::size_t i = 0; i < samples.x.size(); ++i) {
    out.dual_side += samples.w[i] * poly_eval_numeric(f, std::span<const double>(&samples.x[i], 1)) *
                     samples.value[i];
  }
  return out;
}

}  // namespace projdunkl
