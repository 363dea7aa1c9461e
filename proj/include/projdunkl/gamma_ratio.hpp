#pragma once

// Formal products of Gamma values at rational arguments,
//   prefactor * prod Gamma(a_i) / prod Gamma(b_j),
// with exact equality through a canonical form.

#include "projdunkl/mpoly.hpp"
#include "projdunkl/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace projdunkl {

class GammaRatio {
 public:
  /// The rational constant c (no Gamma factors).
  GammaRatio(Rational prefactor = 1);
  /// Throws std::domain_error if any argument is a non-positive integer.
  GammaRatio(Rational prefactor, std::vector<Rational> numerator_args, std::vector<Rational> denominator_args);

  static GammaRatio gamma(const Rational& a);
  static GammaRatio inverse_gamma(const Rational& a);

  const Rational& prefactor() const { return prefactor_; }
  const std::vector<Rational>& numerator_args() const { return num_; }
  const std::vector<Rational>& denominator_args() const { return den_; }

  /// Canonical signature: each argument shifted into (0,1] via
  /// Gamma(z+1) = z Gamma(z); Gamma(1) = 1 is dropped. Keys are the reduced
  /// arguments, values the net exponent (zero exponents removed).
  struct Canonical {
    Rational prefactor;
    std::map<Rational, int> exponents;
    friend bool operator==(const Canonical&, const Canonical&) = default;
  };
  Canonical canonical() const;

  /// Same value, stored in canonical form.
  GammaRatio reduced() const;
  bool is_zero() const { return prefactor_ == 0; }
  /// True when the canonical form carries no Gamma factors.
  bool is_rational() const;
  /// Rational value; throws std::logic_error if !is_rational().
  Rational rational_value() const;
  double to_double() const;

  /// One application of Gamma(z+1) = z Gamma(z) to a single stored argument:
  /// direction +1 rewrites Gamma(a) as (a-1) Gamma(a-1), direction -1 rewrites
  /// Gamma(a) as Gamma(a+1)/a. Value and canonical form are unchanged.
  GammaRatio shifted(bool in_numerator, std::size_t index, int direction) const;

  GammaRatio& operator*=(const GammaRatio& other);
  GammaRatio& operator*=(const Rational& s);
  GammaRatio inverse() const;

  friend bool operator==(const GammaRatio& a, const GammaRatio& b) { return a.canonical() == b.canonical(); }

 private:
  Rational prefactor_;
  std::vector<Rational> num_;
  std::vector<Rational> den_;
};

GammaRatio operator*(GammaRatio a, const GammaRatio& b);
GammaRatio operator/(const GammaRatio& a, const GammaRatio& b);

/// Raw stored form, e.g. "1/Γ(2)", "3/2*Γ(1/2)/(Γ(3)*Γ(5/2))".
std::string to_string(const GammaRatio& g);

/// Polynomial in one variable whose coefficients are GammaRatios; the exact
/// carrier for the Erdelyi-Kober operators. Zero coefficients are not stored.
class GammaPoly {
 public:
  GammaPoly() = default;
  /// Lifts a one-variable MPoly (dimension 1).
  static GammaPoly from_poly(const MPoly& p);
  static GammaPoly monomial(int m, GammaRatio c = GammaRatio(1));

  const std::map<int, GammaRatio>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Sets the coefficient of x^m (removing it when zero).
  void set(int m, GammaRatio c);

  /// Every coefficient rational (canonical form), so the value is an MPoly.
  bool is_rational() const;
  MPoly to_poly() const;

  friend bool operator==(const GammaPoly& a, const GammaPoly& b);

 private:
  std::map<int, GammaRatio> terms_;
};

/// Canonical coefficients, lowest degree last: "1/3*x1^2", "Γ(1/2)/Γ(3)*x1^2 + 1".
std::string to_string(const GammaPoly& p);

}  // namespace projdunkl
