#include "projdunkl/mpoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace projdunkl;

namespace {

MPoly P(const char* s, std::size_t dim) { return parse_poly(s, dim); }
RationalVector V(const char* s) { return parse_vector(s); }

MPoly random_poly(std::mt19937_64& g, std::size_t n, int degree) {
  std::uniform_int_distribution<int> c(-4, 4), keep(0, 2);
  MPoly p(n);
  for (const auto& e : monomials_up_to_degree(n, degree))
    if (keep(g) == 0) p += MPoly::monomial(n, e, Rational(c(g), 3));
  return p;
}

}  // namespace

TEST(PolyEval, Examples) {
  EXPECT_EQ(poly_eval(P("x1^2", 2), V("(3,1)")), 9);
  EXPECT_EQ(poly_eval(MPoly(2), V("(3,1)")), 0);
  EXPECT_EQ(poly_eval(P("x1*x2 + 1/2", 2), V("(1/2,2)")), Rational(3, 2));
}

TEST(DirectionalDerivative, Examples) {
  EXPECT_EQ(directional_derivative(P("x1^2", 1), V("(1)")), P("2*x1", 1));
  EXPECT_EQ(directional_derivative(P("x1*x2", 2), V("(1,1)")), P("x1 + x2", 2));
  EXPECT_TRUE(directional_derivative(P("7/3", 2), V("(1,2)")).is_zero());
  EXPECT_THROW(directional_derivative(P("x1", 2), V("(1)")), std::invalid_argument);
}

TEST(ComposeLinear, Examples) {
  EXPECT_EQ(compose_linear(P("x1", 2), LinearMap::projection(V("(1,-1)"))), P("1/2*x1 + 1/2*x2", 2));
  auto p = P("3*x1^2*x2 - x2 + 5", 2);
  EXPECT_EQ(compose_linear(p, LinearMap::identity(2)), p);
  EXPECT_EQ(compose_linear(P("x1^2", 1), LinearMap::reflection(V("(1)"))), P("x1^2", 1));
}

TEST(DividedDifference, Examples) {
  EXPECT_EQ(divided_difference(P("x1^2", 2), V("(1,-1)")), P("3/4*x1 + 1/4*x2", 2));
  EXPECT_TRUE(divided_difference(P("5", 2), V("(1,-1)")).is_zero());
  EXPECT_EQ(divided_difference(P("x1", 1), V("(1)")), P("1", 1));
  EXPECT_THROW(divided_difference(P("x1", 2), V("(0,0)")), std::invalid_argument);
}

TEST(DividedDifference, NonExactDivisionThrows) {
  EXPECT_THROW(divide_by_linear_form(P("x1 + 1", 2), V("(1,-1)")), ExactDivisionError);
}

TEST(ClassicalDunkl, Examples) {
  std::vector<RationalVector> r{V("(1)")};
  std::vector<Rational> k{Rational(3, 5)};
  EXPECT_EQ(classical_dunkl(P("x1^2", 1), V("(1)"), r, k), P("2*x1", 1));
  EXPECT_EQ(classical_dunkl(P("x1^3", 1), V("(1)"), r, k), P("21/5*x1^2", 1));  // (3 + 2k) x^2
  std::vector<Rational> zero{Rational(0)};
  auto p = P("x1^4 - 2*x1", 1);
  EXPECT_EQ(classical_dunkl(p, V("(1)"), r, zero), directional_derivative(p, V("(1)")));
}

TEST(DividedDifference, RandomInvariants) {
  std::mt19937_64 g(5);
  std::uniform_int_distribution<int> c(-3, 3), dim(2, 5);
  for (int s = 0; s < 40; ++s) {
    std::size_t n = dim(g);
    auto p = random_poly(g, n, 6 - s % 3);
    std::vector<Rational> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = c(g);
    if (RationalVector(a).is_zero()) a[0] = 1;
    RationalVector alpha(a);
    auto rho = divided_difference(p, alpha);
    EXPECT_EQ(MPoly::linear_form(alpha) * rho + compose_linear(p, LinearMap::projection(alpha)), p);

    // homogeneity
    auto h = MPoly(n);
    for (const auto& [e, q] : p.terms())
      if (e.degree() == 4) h.add_term(e, q);
    if (!h.is_zero()) EXPECT_TRUE(divided_difference(h, alpha).is_homogeneous(3));

    // rho_a rho_b = rho_b rho_a and d_beta rho_a = rho_a d_beta for beta orthogonal to alpha
    RationalVector beta = RationalVector::unit(n, 0);
    beta = beta - (dot(beta, alpha) / norm2(alpha)) * alpha;
    if (beta.is_zero()) beta = RationalVector::unit(n, 1) - (dot(RationalVector::unit(n, 1), alpha) / norm2(alpha)) * alpha;
    EXPECT_EQ(divided_difference(divided_difference(p, alpha), beta),
              divided_difference(divided_difference(p, beta), alpha));
    EXPECT_EQ(directional_derivative(divided_difference(p, alpha), beta),
              divided_difference(directional_derivative(p, beta), alpha));
  }
}

TEST(Parse, RoundTripAndErrors) {
  auto p = P("3/2*x1^2*x3 - x2", 3);
  EXPECT_EQ(to_string(p), "3/2*x1^2*x3 - x2");
  EXPECT_EQ(parse_poly(to_string(p), 3), p);
  EXPECT_EQ(parse_poly("x1^2").dim(), 1u);
  EXPECT_EQ(parse_poly("x1 + x4").dim(), 4u);
  EXPECT_EQ(to_string(MPoly(2)), "0");
  try {
    parse_poly("x1^^2");
    FAIL();
  } catch (const PolyParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(parse_poly("x0"), PolyParseError);
  EXPECT_THROW(parse_poly("x3", 2), std::invalid_argument);
  EXPECT_THROW(parse_poly("2*"), PolyParseError);
}

TEST(Parse, GrlexOrder) {
  EXPECT_EQ(to_string(P("1 + x2 + x1 + x2^2 + x1*x2", 2)), "x1*x2 + x2^2 + x1 + x2 + 1");
}

TEST(Monomials, Counts) {
  EXPECT_EQ(monomials_of_degree(3, 2).size(), 6u);
  EXPECT_EQ(monomials_up_to_degree(4, 6).size(), 210u);
  EXPECT_EQ(monomials_up_to_degree(6, 8).size(), 3003u);
}
