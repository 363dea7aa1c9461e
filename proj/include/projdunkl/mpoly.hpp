#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include "projdunkl/rational.hpp"
#include "projdunkl/rootgeom.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace projdunkl {

inline constexpr std::size_t kMaxVariables = 16;

struct Exponent {
  std::array<std::uint8_t, kMaxVariables> e{};

  int degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order, largest first (x1 > x2 > ... within a degree).
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

class MPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexGreater>;

  explicit MPoly(std::size_t dim);

  static MPoly constant(std::size_t dim, const Rational& c);
  /// x_{j+1} for zero-based j.
  static MPoly variable(std::size_t dim, std::size_t j);
  static MPoly monomial(std::size_t dim, const Exponent& exponent, const Rational& c = 1);
  /// <x, v>.
  static MPoly linear_form(const RationalVector& v);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous(int degree) const;
  Rational coefficient(const Exponent& exponent) const;

  void add_term(const Exponent& exponent, const Rational& c);

  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const Rational& s);
  MPoly operator-() const;

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

 private:
  std::size_t dim_;
  TermMap terms_;
};

MPoly operator+(MPoly a, const MPoly& b);
MPoly operator-(MPoly a, const MPoly& b);
MPoly operator*(const MPoly& a, const MPoly& b);
MPoly operator*(const Rational& s, MPoly p);
MPoly pow(const MPoly& p, int n);

/// Exact N x N matrix used only as the substitution x -> A x.
class LinearMap {
 public:
  explicit LinearMap(std::vector<std::vector<Rational>> rows);
  static LinearMap identity(std::size_t dim);
  static LinearMap projection(const RationalVector& alpha);
  static LinearMap reflection(const RationalVector& alpha);

  std::size_t dim() const { return rows_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  RationalVector apply(const RationalVector& x) const;

 private:
  std::vector<std::vector<Rational>> rows_;
};

Rational poly_eval(const MPoly& p, const RationalVector& x);
std::complex<double> poly_eval_numeric(const MPoly& p, std::span<const double> x);

MPoly partial_derivative(const MPoly& p, std::size_t j);
/// sum_j xi_j dp/dx_j.
MPoly directional_derivative(const MPoly& p, const RationalVector& xi);
/// p(A x), fully expanded.
MPoly compose_linear(const MPoly& p, const LinearMap& map);
/// Substitutes x_k -> images[k]; every image must share one target dimension.
MPoly substitute(const MPoly& p, std::span<const MPoly> images);

/// Raised when an exact division leaves a remainder. Only an arithmetic bug
/// can cause this; callers must not catch and continue.
class ExactDivisionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// numerator / <x, alpha> by synthetic division along the first variable with
/// a nonzero alpha coordinate. Throws ExactDivisionError on a remainder.
MPoly divide_by_linear_form(const MPoly& numerator, const RationalVector& alpha);

/// rho_alpha p = (p - p o tau_alpha) / <x, alpha>.
MPoly divided_difference(const MPoly& p, const RationalVector& alpha);

/// The reflection-type operator: d_xi p + sum kappa <alpha,xi> (p - p o s_alpha)/<x,alpha>.
MPoly classical_dunkl(const MPoly& p, const RationalVector& xi, std::span<const RationalVector> positive_roots,
                      std::span<const Rational> kappas);

class PolyParseError : public std::invalid_argument {
 public:
  PolyParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Canonical text, graded-lex order: "3/2*x1^2*x3 - x2".
std::string to_string(const MPoly& p);
/// Parses the canonical text (and looser spellings of it). `dim == 0` infers
/// the dimension from the largest variable index.
MPoly parse_poly(std::string_view text, std::size_t dim = 0);

/// All exponents of total degree exactly `degree` in `dim` variables, grlex order.
std::vector<Exponent> monomials_of_degree(std::size_t dim, int degree);
std::vector<Exponent> monomials_up_to_degree(std::size_t dim, int max_degree);

}  // namespace projdunkl
