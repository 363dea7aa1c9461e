#include "projdunkl/gamma_ratio.hpp"

#include <cmath>
#include <stdexcept>

namespace projdunkl {

namespace {

void check_pole(const Rational& a) {
  if (is_integer(a) && a <= 0) throw std::domain_error("Gamma pole at argument " + to_string(a));
}

// a = r + k with r in (0,1], k integer.
std::pair<Rational, long> split(const Rational& a) {
  long k = ceil_to_long(a) - 1;
  return {a - k, k};
}

// Gamma(r + k) / Gamma(r) as a rational.
Rational shift_factor(const Rational& r, long k) {
  Rational f = 1;
  if (k >= 0) {
    for (long i = 0; i < k; ++i) f *= r + i;
  } else {
    for (long i = k; i < 0; ++i) f /= r + i;
  }
  return f;
}

std::string gamma_text(const Rational& a) { return "Γ(" + to_string(a) + ")"; }

}  // namespace

GammaRatio::GammaRatio(Rational prefactor) : prefactor_(std::move(prefactor)) { prefactor_.canonicalize(); }

GammaRatio::GammaRatio(Rational prefactor, std::vector<Rational> numerator_args,
                       std::vector<Rational> denominator_args)
    : prefactor_(std::move(prefactor)), num_(std::move(numerator_args)), den_(std::move(denominator_args)) {
  prefactor_.canonicalize();
  for (auto& a : num_) a.canonicalize(), check_pole(a);
  for (auto& a : den_) a.canonicalize(), check_pole(a);
}

GammaRatio GammaRatio::gamma(const Rational& a) { return GammaRatio(1, {a}, {}); }
GammaRatio GammaRatio::inverse_gamma(const Rational& a) { return GammaRatio(1, {}, {a}); }

GammaRatio::Canonical GammaRatio::canonical() const {
  Canonical c{prefactor_, {}};
  if (prefactor_ == 0) return c;
  auto absorb = [&](const Rational& a, int sign) {
    auto [r, k] = split(a);
    Rational f = shift_factor(r, k);
    if (sign > 0) {
      c.prefactor *= f;
    } else {
      c.prefactor /= f;
    }
    if (r != 1) c.exponents[r] += sign;
  };
  for (const auto& a : num_) absorb(a, +1);
  for (const auto& a : den_) absorb(a, -1);
  std::erase_if(c.exponents, [](const auto& kv) { return kv.second == 0; });
  return c;
}

GammaRatio GammaRatio::reduced() const {
  auto c = canonical();
  std::vector<Rational> num, den;
  for (const auto& [r, e] : c.exponents) {
    for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : den).push_back(r);
  }
  return GammaRatio(c.prefactor, std::move(num), std::move(den));
}

bool GammaRatio::is_rational() const { return canonical().exponents.empty(); }

Rational GammaRatio::rational_value() const {
  auto c = canonical();
  if (!c.exponents.empty()) throw std::logic_error("GammaRatio " + to_string(*this) + " is not rational");
  return c.prefactor;
}

double GammaRatio::to_double() const {
  auto c = canonical();
  double log_sum = 0;
  for (const auto& [r, e] : c.exponents) log_sum += e * std::lgamma(r.get_d());
  return c.prefactor.get_d() * std::exp(log_sum);
}

GammaRatio GammaRatio::shifted(bool in_numerator, std::size_t index, int direction) const {
  GammaRatio out = *this;
  auto& args = in_numerator ? out.num_ : out.den_;
  if (index >= args.size()) throw std::out_of_range("GammaRatio::shifted: argument index");
  Rational& a = args[index];
  Rational factor;
  if (direction > 0) {
    // Gamma(a) = (a-1) Gamma(a-1)
    if (is_integer(a - 1) && a - 1 <= 0) throw std::domain_error("shift would reach a Gamma pole");
    factor = a - 1;
    a -= 1;
  } else {
    // Gamma(a) = Gamma(a+1)/a
    factor = 1 / a;
    a += 1;
  }
  if (in_numerator) {
    out.prefactor_ *= factor;
  } else {
    out.prefactor_ /= factor;
  }
  return out;
}

GammaRatio& GammaRatio::operator*=(const GammaRatio& other) {
  prefactor_ *= other.prefactor_;
  num_.insert(num_.end(), other.num_.begin(), other.num_.end());
  den_.insert(den_.end(), other.den_.begin(), other.den_.end());
  return *this;
}

GammaRatio& GammaRatio::operator*=(const Rational& s) {
  prefactor_ *= s;
  return *this;
}

GammaRatio GammaRatio::inverse() const {
  if (prefactor_ == 0) throw std::domain_error("GammaRatio::inverse of zero");
  return GammaRatio(1 / prefactor_, den_, num_);
}

GammaRatio operator*(GammaRatio a, const GammaRatio& b) { return a *= b; }
GammaRatio operator/(const GammaRatio& a, const GammaRatio& b) { return a * b.inverse(); }

std::string to_string(const GammaRatio& g) {
  if (g.is_zero()) return "0";
  std::string top;
  if (g.prefactor() != 1 || g.numerator_args().empty()) top = to_string(g.prefactor());
  for (const auto& a : g.numerator_args()) top += (top.empty() ? "" : "*") + gamma_text(a);
  const auto& den = g.denominator_args();
  if (den.empty()) return top;
  std::string bottom;
  for (const auto& a : den) bottom += (bottom.empty() ? "" : "*") + gamma_text(a);
  return top + "/" + (den.size() > 1 ? "(" + bottom + ")" : bottom);
}

GammaPoly GammaPoly::from_poly(const MPoly& p) {
  if (p.dim() != 1) throw std::invalid_argument("GammaPoly: polynomial must be in one variable");
  GammaPoly out;
  for (const auto& [e, c] : p.terms()) out.set(e.e[0], GammaRatio(c));
  return out;
}

GammaPoly GammaPoly::monomial(int m, GammaRatio c) {
  GammaPoly out;
  out.set(m, std::move(c));
  return out;
}

void GammaPoly::set(int m, GammaRatio c) {
  if (m < 0) throw std::invalid_argument("GammaPoly: negative exponent");
  if (c.is_zero()) {
    terms_.erase(m);
  } else {
    terms_[m] = std::move(c);
  }
}

bool GammaPoly::is_rational() const {
  for (const auto& [m, c] : terms_) {
    if (!c.is_rational()) return false;
  }
  return true;
}

MPoly GammaPoly::to_poly() const {
  MPoly out(1);
  for (const auto& [m, c] : terms_) {
    if (m > 255) throw std::out_of_range("GammaPoly: exponent too large for MPoly");
    Exponent e;
    e.e[0] = static_cast<std::uint8_t>(m);
    out.add_term(e, c.rational_value());
  }
  return out;
}

bool operator==(const GammaPoly& a, const GammaPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  }
  return true;
}

std::string to_string(const GammaPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    GammaRatio g = c.reduced();
    std::string coef;
    bool negative = false;
    if (g.is_rational()) {
      Rational q = g.rational_value();
      negative = q < 0;
      coef = to_string(Rational(abs(q)));
    } else {
      negative = g.prefactor() < 0;
      if (negative) g *= Rational(-1);
      coef = to_string(g);
    }
    std::string mono = m == 0 ? "" : (m == 1 ? "x1" : "x1^" + std::to_string(m));
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (coef == "1") {
      term = mono;
    } else {
      term = coef + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out;
}

}  // namespace projdunkl
