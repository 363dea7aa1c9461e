#include "projdunkl/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace projdunkl {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxVariables) {
    throw std::invalid_argument("polynomial dimension must be in 1.." + std::to_string(kMaxVariables));
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
    if (s > std::numeric_limits<std::uint8_t>::max()) throw std::overflow_error("exponent exceeds 255");
    out.e[i] = static_cast<std::uint8_t>(s);
  }
  return out;
}

}  // namespace

MPoly::MPoly(std::size_t dim) : dim_(dim) { check_dim(dim); }

MPoly MPoly::constant(std::size_t dim, const Rational& c) {
  MPoly p(dim);
  Rational q = c;
  q.canonicalize();
  p.add_term(Exponent{}, q);
  return p;
}

MPoly MPoly::variable(std::size_t dim, std::size_t j) {
  if (j >= dim) throw std::invalid_argument("variable index out of range");
  Exponent e;
  e.e[j] = 1;
  return monomial(dim, e);
}

MPoly MPoly::monomial(std::size_t dim, const Exponent& exponent, const Rational& c) {
  MPoly p(dim);
  for (std::size_t i = dim; i < kMaxVariables; ++i) {
    if (exponent.e[i] != 0) throw std::invalid_argument("monomial uses a variable beyond the dimension");
  }
  Rational q = c;  // callers may hand in Rational(n, d) unreduced
  q.canonicalize();
  p.add_term(exponent, q);
  return p;
}

MPoly MPoly::linear_form(const RationalVector& v) {
  MPoly p(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) {
    Exponent e;
    e.e[j] = 1;
    p.add_term(e, v[j]);
  }
  return p;
}

int MPoly::total_degree() const {
  // grlex puts the highest degree first
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

bool MPoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.degree() == degree; });
}

Rational MPoly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Exponent& exponent, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& other) {
  require_same_dim(dim_, other.dim_, "polynomial add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  require_same_dim(dim_, other.dim_, "polynomial subtract");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
MPoly operator*(const Rational& s, MPoly p) { return p *= s; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same_dim(a.dim(), b.dim(), "polynomial multiply");
  MPoly out(a.dim());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) out.add_term(add_exponents(ea, eb), ca * cb);
  }
  return out;
}

MPoly pow(const MPoly& p, int n) {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  MPoly result = MPoly::constant(p.dim(), 1);
  for (int i = 0; i < n; ++i) result = result * p;
  return result;
}

LinearMap::LinearMap(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
  check_dim(rows_.size());
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw std::invalid_argument("LinearMap must be square");
  }
}

LinearMap LinearMap::identity(std::size_t dim) {
  std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return LinearMap(std::move(rows));
}

LinearMap LinearMap::projection(const RationalVector& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("projection: zero root");
  const std::size_t n = alpha.dim();
  Rational n2 = norm2(alpha);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = (i == j ? Rational(1) : Rational(0)) - alpha[i] * alpha[j] / n2;
  }
  return LinearMap(std::move(rows));
}

LinearMap LinearMap::reflection(const RationalVector& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("reflection: zero root");
  const std::size_t n = alpha.dim();
  Rational n2 = norm2(alpha);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = (i == j ? Rational(1) : Rational(0)) - 2 * alpha[i] * alpha[j] / n2;
    }
  }
  return LinearMap(std::move(rows));
}

RationalVector LinearMap::apply(const RationalVector& x) const {
  require_same_dim(dim(), x.dim(), "LinearMap::apply");
  auto out = RationalVector::zero(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) out[i] += rows_[i][j] * x[j];
  }
  return out;
}

Rational poly_eval(const MPoly& p, const RationalVector& x) {
  require_same_dim(p.dim(), x.dim(), "poly_eval");
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      for (int k = 0; k < e.e[j]; ++k) term *= x[j];
    }
    sum += term;
  }
  return sum;
}

std::complex<double> poly_eval_numeric(const MPoly& p, std::span<const double> x) {
  require_same_dim(p.dim(), x.size(), "poly_eval_numeric");
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t j = 0; j < p.dim(); ++j) {
      for (int k = 0; k < e.e[j]; ++k) term *= x[j];
    }
    sum += term;
  }
  return sum;
}

MPoly partial_derivative(const MPoly& p, std::size_t j) {
  if (j >= p.dim()) throw std::invalid_argument("partial_derivative: variable index out of range");
  MPoly out(p.dim());
  for (const auto& [e, c] : p.terms()) {
    if (e.e[j] == 0) continue;
    Exponent d = e;
    --d.e[j];
    out.add_term(d, c * e.e[j]);
  }
  return out;
}

MPoly directional_derivative(const MPoly& p, const RationalVector& xi) {
  require_same_dim(p.dim(), xi.dim(), "directional_derivative");
  MPoly out(p.dim());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (e.e[j] == 0 || xi[j] == 0) continue;
      Exponent d = e;
      --d.e[j];
      out.add_term(d, c * e.e[j] * xi[j]);
    }
  }
  return out;
}

MPoly substitute(const MPoly& p, std::span<const MPoly> images) {
  require_same_dim(p.dim(), images.size(), "substitute");
  const std::size_t target = images.empty() ? p.dim() : images[0].dim();
  for (const auto& img : images) require_same_dim(target, img.dim(), "substitute images");

  // powers[k][m] = images[k]^m, built lazily
  std::vector<std::vector<MPoly>> powers(p.dim());
  auto power = [&](std::size_t k, int m) -> const MPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(MPoly::constant(target, 1));
    while (static_cast<int>(cache.size()) <= m) cache.push_back(cache.back() * images[k]);
    return cache[m];
  };

  MPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    MPoly term = MPoly::constant(target, c);
    for (std::size_t k = 0; k < p.dim(); ++k) {
      if (e.e[k] != 0) term = term * power(k, e.e[k]);
    }
    out += term;
  }
  return out;
}

MPoly compose_linear(const MPoly& p, const LinearMap& map) {
  require_same_dim(p.dim(), map.dim(), "compose_linear");
  std::vector<MPoly> images;
  images.reserve(map.dim());
  for (std::size_t k = 0; k < map.dim(); ++k) {
    MPoly row(map.dim());
    for (std::size_t l = 0; l < map.dim(); ++l) {
      if (map(k, l) == 0) continue;
      Exponent e;
      e.e[l] = 1;
      row.add_term(e, map(k, l));
    }
    images.push_back(std::move(row));
  }
  return substitute(p, images);
}

MPoly divide_by_linear_form(const MPoly& numerator, const RationalVector& alpha) {
  require_same_dim(numerator.dim(), alpha.dim(), "divide_by_linear_form");
  if (alpha.is_zero()) throw std::invalid_argument("divide_by_linear_form: zero root");
  const std::size_t n = alpha.dim();
  if (numerator.is_zero()) return MPoly(n);

  std::size_t pivot = 0;
  while (alpha[pivot] == 0) ++pivot;

  // numerator = sum_e A_e x_p^e, the A_e free of x_p
  int top = 0;
  for (const auto& [e, c] : numerator.terms()) top = std::max(top, int(e.e[pivot]));
  std::vector<MPoly> slices(top + 1, MPoly(n));
  for (const auto& [e, c] : numerator.terms()) {
    Exponent rest = e;
    rest.e[pivot] = 0;
    slices[e.e[pivot]].add_term(rest, c);
  }

  RationalVector tail = alpha;
  tail[pivot] = 0;
  const MPoly rest_form = MPoly::linear_form(tail);
  const Rational inv_lead = 1 / alpha[pivot];

  // <x,alpha> = alpha_p x_p + L;  B_{e-1} = (A_e - L B_e) / alpha_p
  std::vector<MPoly> quotient(std::max(top, 1), MPoly(n));
  if (top >= 1) {
    quotient[top - 1] = inv_lead * slices[top];
    for (int e = top - 1; e >= 1; --e) {
      quotient[e - 1] = inv_lead * (slices[e] - rest_form * quotient[e]);
    }
  }
  MPoly remainder = top >= 1 ? slices[0] - rest_form * quotient[0] : slices[0];
  if (!remainder.is_zero()) {
    throw ExactDivisionError("exact division by <x," + to_string(alpha) + "> left remainder " + to_string(remainder));
  }

  MPoly out(n);
  for (int e = 0; e < top; ++e) {
    for (const auto& [ex, c] : quotient[e].terms()) {
      Exponent shifted = ex;
      shifted.e[pivot] = static_cast<std::uint8_t>(e);
      out.add_term(shifted, c);
    }
  }
  return out;
}

MPoly divided_difference(const MPoly& p, const RationalVector& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("divided_difference: zero root");
  require_same_dim(p.dim(), alpha.dim(), "divided_difference");
  return divide_by_linear_form(p - compose_linear(p, LinearMap::projection(alpha)), alpha);
}

MPoly classical_dunkl(const MPoly& p, const RationalVector& xi, std::span<const RationalVector> positive_roots,
                      std::span<const Rational> kappas) {
  if (positive_roots.size() != kappas.size()) throw std::invalid_argument("classical_dunkl: count mismatch");
  MPoly out = directional_derivative(p, xi);
  for (std::size_t i = 0; i < positive_roots.size(); ++i) {
    const auto& alpha = positive_roots[i];
    if (alpha.is_zero()) throw std::invalid_argument("classical_dunkl: zero root");
    Rational weight = kappas[i] * dot(alpha, xi);
    if (weight == 0) continue;
    MPoly diff = p - compose_linear(p, LinearMap::reflection(alpha));
    out += weight * divide_by_linear_form(diff, alpha);
  }
  return out;
}

PolyParseError::PolyParseError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (e.e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(j + 1);
      if (e.e[j] > 1) mono += "^" + std::to_string(e.e[j]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  // Terms are collected as (coefficient, exponent, max variable index).
  struct Term {
    Rational coeff;
    Exponent exponent;
  };

  std::vector<Term> parse(std::size_t& max_var) {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) throw PolyParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Term t = parse_term(max_var);
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw PolyParseError(std::string("unexpected '") + c + "'", pos_);
      negative = c == '-';
      ++pos_;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  mpz_class parse_integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw PolyParseError("expected a number", pos_);
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Term parse_term(std::size_t& max_var) {
    Term t{Rational(1), Exponent{}};
    bool expect_factor = true;
    while (expect_factor) {
      skip_ws();
      if (at_end()) throw PolyParseError("expected a factor", pos_);
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        mpz_class num = parse_integer();
        Rational value(num);
        if (!at_end() && peek() == '.') {
          ++pos_;
          std::size_t fstart = pos_;
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          value = parse_rational(text_.substr(start, pos_ - start));
          (void)fstart;
        } else if (!at_end() && peek() == '/') {
          ++pos_;
          std::size_t dpos = pos_;
          mpz_class den = parse_integer();
          if (den == 0) throw PolyParseError("zero denominator", dpos);
          value = Rational(num, den);
          value.canonicalize();
        }
        t.coeff *= value;
      } else if (c == 'x') {
        ++pos_;
        std::size_t ipos = pos_;
        mpz_class idx = parse_integer();
        if (idx < 1 || idx > static_cast<long>(kMaxVariables)) {
          throw PolyParseError("variable index must be 1.." + std::to_string(kMaxVariables), ipos);
        }
        std::size_t j = idx.get_ui() - 1;
        max_var = std::max(max_var, j + 1);
        unsigned power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          std::size_t ppos = pos_;
          mpz_class pw = parse_integer();
          if (pw > 255) throw PolyParseError("exponent exceeds 255", ppos);
          power = pw.get_ui();
        }
        unsigned total = t.exponent.e[j] + power;
        if (total > 255) throw PolyParseError("exponent exceeds 255", ipos);
        t.exponent.e[j] = static_cast<std::uint8_t>(total);
      } else {
        throw PolyParseError(std::string("unexpected '") + c + "'", pos_);
      }
      skip_ws();
      expect_factor = !at_end() && peek() == '*';
      if (expect_factor) ++pos_;
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void enumerate_degree(std::size_t dim, int remaining, std::size_t index, Exponent& current,
                      std::vector<Exponent>& out) {
  if (index + 1 == dim) {
    current.e[index] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    current.e[index] = 0;
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current.e[index] = static_cast<std::uint8_t>(k);
    enumerate_degree(dim, remaining - k, index + 1, current, out);
  }
  current.e[index] = 0;
}

}  // namespace

MPoly parse_poly(std::string_view text, std::size_t dim) {
  std::size_t max_var = 0;
  auto terms = PolyParser(text).parse(max_var);
  if (dim == 0) dim = std::max<std::size_t>(max_var, 1);
  if (max_var > dim) {
    throw PolyParseError("variable x" + std::to_string(max_var) + " exceeds dimension " + std::to_string(dim), 0);
  }
  MPoly p(dim);
  for (const auto& t : terms) p.add_term(t.exponent, t.coeff);
  return p;
}

std::vector<Exponent> monomials_of_degree(std::size_t dim, int degree) {
  check_dim(dim);
  std::vector<Exponent> out;
  if (degree < 0) return out;
  Exponent current;
  enumerate_degree(dim, degree, 0, current, out);
  return out;
}

std::vector<Exponent> monomials_up_to_degree(std::size_t dim, int max_degree) {
  std::vector<Exponent> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto level = monomials_of_degree(dim, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace projdunkl
