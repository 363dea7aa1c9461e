#include "projdunkl/kummer.hpp"

#include "projdunkl/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace projdunkl {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using Quad = __float128;
constexpr double kQuadEpsilon = 1.925929944387236e-34;  // 2^-112
#else
using Quad = long double;
constexpr double kQuadEpsilon = std::numeric_limits<long double>::epsilon();
#endif

struct QComplex {
  Quad re = 0, im = 0;
};

QComplex mul(const QComplex& x, const QComplex& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }

QComplex div(const QComplex& x, const QComplex& y) {
  Quad d = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
}

double mag2(const QComplex& x) { return static_cast<double>(x.re * x.re + x.im * x.im); }

bool is_nonpositive_integer(Complex b) {
  return b.imag() == 0 && b.real() <= 0 && std::floor(b.real()) == b.real();
}

bool real_params_for_integral(const KummerParams& p) {
  return p.a.imag() == 0 && p.b.imag() == 0 && p.b.real() > p.a.real() && p.a.real() > 0;
}

template <class Real>
Complex integral_impl(double a, double b, Complex zc, int order) {
  using C = std::complex<Real>;
  const C z(zc.real(), zc.imag());
  const double c = b - a - 1;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(zc) / 6.0)));
  const Real h = Real(1) / panels;
  // integrand without the Jacobi weights: t^{a-1} (1-t)^c e^{z(t-1)}
  auto expo = [&](Real t) { return std::exp(z * (t - 1)); };
  C sum = 0;
  if (panels == 1) {
    auto rule = jacobi_rule(c, a - 1, order);
    for (int i = 0; i < rule->order; ++i) sum += Real(rule->weights[i]) * expo(rule->nodes[i]);
  } else {
    // [0,h]: t = h s, weight s^{a-1}
    auto first = jacobi_rule(0.0, a - 1, order);
    C part = 0;
    for (int i = 0; i < first->order; ++i) {
      Real t = h * Real(first->nodes[i]);
      part += Real(first->weights[i]) * std::pow(1 - t, Real(c)) * expo(t);
    }
    sum += std::pow(h, Real(a)) * part;
    auto gl = legendre_rule(order);
    for (int k = 1; k < panels - 1; ++k) {
      part = 0;
      for (int i = 0; i < gl->order; ++i) {
        Real t = h * (k + Real(gl->nodes[i]));
        part += Real(gl->weights[i]) * std::pow(t, Real(a - 1)) * std::pow(1 - t, Real(c)) * expo(t);
      }
      sum += h * part;
    }
    // [1-h,1]: t = 1 - h + h s, weight (1-s)^c
    auto last = jacobi_rule(c, 0.0, order);
    part = 0;
    for (int i = 0; i < last->order; ++i) {
      Real t = 1 - h + h * Real(last->nodes[i]);
      part += Real(last->weights[i]) * std::pow(t, Real(a - 1)) * expo(t);
    }
    sum += std::pow(h, Real(c + 1)) * part;
  }
  const Real log_norm = std::lgamma(Real(b)) - std::lgamma(Real(a)) - std::lgamma(Real(b - a));
  C out = std::exp(log_norm) * std::exp(z) * sum;
  return Complex(static_cast<double>(out.real()), static_cast<double>(out.imag()));
}

}  // namespace

Precision precision_from_env() {
  const char* v = std::getenv("PROJDUNKL_PRECISION");
  if (v == nullptr || *v == '\0') return Precision::Double;
  std::string s(v);
  if (s == "double") return Precision::Double;
  if (s == "extended") return Precision::Extended;
  throw std::invalid_argument("PROJDUNKL_PRECISION must be 'double' or 'extended', got '" + s + "'");
}

std::string to_string(Precision p) { return p == Precision::Double ? "double" : "extended"; }

void KummerParams::validate() const {
  if (is_nonpositive_integer(b)) throw std::domain_error("M(a,b;z): b is a non-positive integer");
  if (!(series_tolerance > 0 && series_tolerance <= 1e-10)) {
    throw std::invalid_argument("KummerParams: series_tolerance must lie in (0, 1e-10]");
  }
  if (max_terms < 50) throw std::invalid_argument("KummerParams: max_terms must be >= 50");
}

Complex kummer_M_series(const KummerParams& params, Complex z) {
  params.validate();
  const QComplex a{params.a.real(), params.a.imag()}, b{params.b.real(), params.b.imag()};
  const QComplex zq{z.real(), z.imag()};
  QComplex term{1, 0}, sum{1, 0};
  double largest = 1;
  const double tol2 = params.series_tolerance * params.series_tolerance;
  int quiet = 0;
  for (int n = 0; n < params.max_terms; ++n) {
    // t_{n+1} = t_n (a+n)/(b+n) z/(n+1)
    QComplex an{a.re + n, a.im}, bn{b.re + n, b.im};
    term = mul(div(mul(term, an), bn), zq);
    term.re /= (n + 1);
    term.im /= (n + 1);
    sum.re += term.re;
    sum.im += term.im;
    const double t2 = mag2(term);
    largest = std::max(largest, t2);
    if (t2 <= tol2 * mag2(sum)) {
      if (++quiet == 3) {
        const double lost = std::sqrt(largest) * kQuadEpsilon * 64;
        // absolute scale: M has zeros on the imaginary axis, so no relative test there
        if (lost > 1e-15 * std::max(std::sqrt(mag2(sum)), 1.0)) {
          throw ConvergenceError("M(a,b;z) series: cancellation exceeds accumulator precision at |z| = " +
                                 std::to_string(std::abs(z)));
        }
        return Complex(static_cast<double>(sum.re), static_cast<double>(sum.im));
      }
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("M(a,b;z) series: no convergence within " + std::to_string(params.max_terms) + " terms");
}

Complex kummer_M_integral(double a, double b, Complex z, Precision precision) {
  if (!(b > a && a > 0)) throw std::domain_error("M(a,b;z) integral representation needs b > a > 0");
  if (precision == Precision::Extended) return integral_impl<long double>(a, b, z, 32);
  return integral_impl<double>(a, b, z, 24);
}

Complex kummer_M(const KummerParams& params, Complex z, Precision precision) {
  params.validate();
  if (params.a == params.b) return std::exp(z);
  if (std::abs(z) > kSeriesSwitch && real_params_for_integral(params)) {
    return kummer_M_integral(params.a.real(), params.b.real(), z, precision);
  }
  return kummer_M_series(params, z);
}

Complex kummer_M(const KummerParams& params, Complex z) { return kummer_M(params, z, precision_from_env()); }

Complex kummer_M(Complex a, Complex b, Complex z) { return kummer_M(KummerParams{a, b}, z); }

Complex bold_M(double kappa, Complex z) {
  if (!(kappa > -1)) throw std::domain_error("bold M needs kappa > -1");
  return kummer_M(1.0, kappa + 1, z) / std::tgamma(kappa + 1);
}

Complex bold_M_derivative(double kappa, int n, Complex z) {
  if (!(kappa > -1)) throw std::domain_error("bold M needs kappa > -1");
  if (n < 0) throw std::invalid_argument("bold_M_derivative: negative order");
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(kappa + n + 1)) * kummer_M(n + 1.0, kappa + n + 1, z);
}

Complex eigen_rank_one(double kappa, Complex lambda, double x) {
  if (!(kappa > -1)) throw std::domain_error("eigenfunction needs kappa > -1");
  return kummer_M(1.0, kappa + 1, Complex(0, 1) * lambda * x);
}

OneVarFunction eigen_rank_one_function(double kappa, Complex lambda) {
  if (!(kappa > -1)) throw std::domain_error("eigenfunction needs kappa > -1");
  OneVarFunction f;
  f.id = "M[" + std::to_string(kappa) + "](i*" + std::to_string(lambda.real()) + "x)";
  f.jet = [kappa, lambda](double x, int R) {
    std::vector<Complex> d(R + 1);
    const Complex il = Complex(0, 1) * lambda;
    Complex coef = 1;
    for (int r = 0; r <= R; ++r) {
      if (r > 0) coef *= il * double(r) / (kappa + r);
      d[r] = coef * kummer_M(r + 1.0, kappa + r + 1, il * x);
    }
    return d;
  };
  return f;
}

Complex generalized_ode_residual(double kappa, Complex lambda, const OneVarFunction& u, double x) {
  const auto d = u.derivatives(x, 2);
  return x * d[2] + (kappa + 1) * d[1] - Complex(0, 1) * lambda * (x * d[1] + d[0]);
}

std::string to_string(EigenFamily f) {
  switch (f) {
    case EigenFamily::DirectProduct: return "direct_product";
    case EigenFamily::AType: return "A_type";
    case EigenFamily::BType: return "B_type";
  }
  return "?";
}

void MultivarEigenfunction::validate() const {
  if (dim < 1) throw std::invalid_argument("eigenfunction: dimension must be >= 1");
  if (lambda.size() != dim) throw std::invalid_argument("eigenfunction: lambda must have N entries");
  std::size_t want = 0;
  switch (family) {
    case EigenFamily::DirectProduct: want = dim; break;
    case EigenFamily::AType: want = dim / 2; break;
    case EigenFamily::BType: want = 2 * (dim / 2); break;
  }
  if ((family != EigenFamily::DirectProduct) && dim < 2) {
    throw std::invalid_argument("eigenfunction: " + to_string(family) + " needs N >= 2");
  }
  if (kappas.size() != want) {
    throw std::invalid_argument("eigenfunction: " + to_string(family) + " with N = " + std::to_string(dim) +
                                " needs " + std::to_string(want) + " multiplicities, got " +
                                std::to_string(kappas.size()));
  }
  for (double k : kappas) {
    if (!(k > 0)) throw std::invalid_argument("eigenfunction: multiplicities must be positive");
  }
}

Complex eigen_multivar(const MultivarEigenfunction& ef, std::span<const double> x) {
  ef.validate();
  if (x.size() != ef.dim) throw std::invalid_argument("eigen_multivar: point dimension mismatch");
  const Complex I(0, 1);
  const auto& l = ef.lambda;
  const std::size_t N = ef.dim, m = N / 2;
  auto M = [](double k, Complex z) { return kummer_M(1.0, k + 1, z); };
  Complex out = 1;
  switch (ef.family) {
    case EigenFamily::DirectProduct:
      for (std::size_t j = 0; j < N; ++j) out *= M(ef.kappas[j], I * l[j] * x[j]);
      return out;
    case EigenFamily::AType: {
      Complex phase = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const double mid = (x[2 * j] + x[2 * j + 1]) / 2;
        phase += (l[2 * j] + l[2 * j + 1]) * mid;
        out *= M(ef.kappas[j], I / 2.0 * (l[2 * j] - l[2 * j + 1]) * (x[2 * j] - x[2 * j + 1]));
      }
      if (N % 2 == 1) phase += l[N - 1] * x[N - 1];
      return std::exp(I * phase) * out;
    }
    case EigenFamily::BType: {
      Complex phase = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const double kp = ef.kappas[j], km = ef.kappas[m + j];
        out *= M(km, I / 2.0 * (l[2 * j] - l[2 * j + 1]) * (x[2 * j] - x[2 * j + 1]));
        out *= M(kp, I / 2.0 * (l[2 * j] + l[2 * j + 1]) * (x[2 * j] + x[2 * j + 1]));
      }
      if (N % 2 == 1) phase += l[N - 1] * x[N - 1];
      return std::exp(I * phase) * out;
    }
  }
  return out;
}

NumericSubsystem numeric_subsystem(const MultivarEigenfunction& ef, Fault fault) {
  ef.validate();
  const std::size_t N = ef.dim, m = N / 2;
  NumericSubsystem s;
  auto unit = [N](std::size_t j) {
    std::vector<double> v(N, 0.0);
    v[j] = 1;
    return v;
  };
  switch (ef.family) {
    case EigenFamily::DirectProduct:
      for (std::size_t j = 0; j < N; ++j) s.roots.push_back(unit(j));
      s.kappas = ef.kappas;
      break;
    case EigenFamily::AType:
      for (std::size_t j = 0; j < m; ++j) {
        auto a = unit(2 * j);
        a[2 * j + 1] = -1;
        s.roots.push_back(a);
      }
      s.kappas = ef.kappas;
      break;
    case EigenFamily::BType:
      for (std::size_t j = 0; j < m; ++j) {
        auto plus = unit(2 * j), minus = unit(2 * j);
        plus[2 * j + 1] = 1;
        minus[2 * j + 1] = -1;
        s.roots.push_back(plus);
        s.roots.push_back(minus);
        s.kappas.push_back(ef.kappas[j]);
        s.kappas.push_back(ef.kappas[m + j]);
      }
      break;
  }
  if (fault == Fault::PerturbRoot) {
    // e_1 - e_2 -> e_1: still orthogonal to the other pairs
    if (ef.family != EigenFamily::AType) {
      throw std::invalid_argument("root perturbation is defined for the A_type family only");
    }
    s.roots[0][1] = 0;
  } else if (fault != Fault::None) {
    throw std::invalid_argument("numeric_subsystem: unsupported fault " + to_string(fault));
  }
  return s;
}

NumericSubsystem numeric_subsystem(const OrthogonalSubsystem& sub) {
  NumericSubsystem s;
  for (std::size_t j = 0; j < sub.size(); ++j) {
    s.roots.push_back(sub.root(j).to_doubles());
    s.kappas.push_back(to_double(sub.kappa(j)));
  }
  return s;
}

namespace {

struct GeneralParts {
  Complex phase_factor;
  std::vector<double> c;         // <x,alpha_j>/|alpha_j|^2
  std::vector<Complex> la;       // <lambda, alpha_j>
  std::vector<double> a2;        // |alpha_j|^2
  std::vector<Complex> factor;   // M(1, kappa_j+1; z_j)
  std::vector<Complex> plambda;  // projection of lambda off every root
};

GeneralParts general_parts(const NumericSubsystem& s, std::span<const Complex> lambda, std::span<const double> x,
                           bool with_projection) {
  const std::size_t N = x.size();
  if (lambda.size() != N) throw std::invalid_argument("eigen_general: lambda/point dimension mismatch");
  GeneralParts g;
  std::vector<double> h0(x.begin(), x.end());
  if (with_projection) g.plambda.assign(lambda.begin(), lambda.end());
  for (std::size_t j = 0; j < s.roots.size(); ++j) {
    const auto& a = s.roots[j];
    if (a.size() != N) throw std::invalid_argument("eigen_general: root dimension mismatch");
    double xa = 0, aa = 0;
    Complex la = 0;
    for (std::size_t k = 0; k < N; ++k) {
      xa += x[k] * a[k];
      aa += a[k] * a[k];
      la += lambda[k] * a[k];
    }
    g.c.push_back(xa / aa);
    g.la.push_back(la);
    g.a2.push_back(aa);
    for (std::size_t k = 0; k < N; ++k) h0[k] -= xa / aa * a[k];
    if (with_projection) {
      for (std::size_t k = 0; k < N; ++k) g.plambda[k] -= la / aa * a[k];
    }
    g.factor.push_back(kummer_M(1.0, s.kappas[j] + 1, Complex(0, 1) * la * (xa / aa)));
  }
  Complex phase = 0;
  for (std::size_t k = 0; k < N; ++k) phase += lambda[k] * h0[k];
  g.phase_factor = std::exp(Complex(0, 1) * phase);
  return g;
}

}  // namespace

Complex eigen_general(const NumericSubsystem& s, std::span<const Complex> lambda, std::span<const double> x) {
  auto g = general_parts(s, lambda, x, false);
  Complex out = g.phase_factor;
  for (const auto& f : g.factor) out *= f;
  return out;
}

std::vector<Complex> eigen_general_gradient(const NumericSubsystem& s, std::span<const Complex> lambda,
                                            std::span<const double> x) {
  const std::size_t N = x.size(), n = s.roots.size();
  auto g = general_parts(s, lambda, x, true);
  const Complex I(0, 1);
  Complex all = g.phase_factor;
  for (const auto& f : g.factor) all *= f;
  std::vector<Complex> grad(N);
  for (std::size_t k = 0; k < N; ++k) grad[k] = I * g.plambda[k] * all;
  for (std::size_t j = 0; j < n; ++j) {
    Complex others = g.phase_factor;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) others *= g.factor[i];
    }
    const double kappa = s.kappas[j];
    const Complex z = I * g.la[j] * g.c[j];
    const Complex dM = kummer_M(2.0, kappa + 2, z) / (kappa + 1);
    for (std::size_t k = 0; k < N; ++k) grad[k] += others * dM * I * g.la[j] * s.roots[j][k] / g.a2[j];
  }
  return grad;
}

TestFunction eigen_test_function(const NumericSubsystem& s, std::vector<Complex> lambda, std::string id) {
  TestFunction f;
  f.id = id.empty() ? "M(lambda,x)" : std::move(id);
  f.dim = lambda.size();
  f.value = [s, lambda](std::span<const double> x) { return eigen_general(s, lambda, x); };
  f.gradient = [s, lambda](std::span<const double> x) { return eigen_general_gradient(s, lambda, x); };
  return f;
}

}  // namespace projdunkl
