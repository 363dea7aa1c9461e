#include "projdunkl/rootgeom.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace projdunkl;

namespace {

RationalVector V(const char* s) { return parse_vector(s); }
Rational Q(const char* s) { return parse_rational(s); }

}  // namespace

TEST(Rational, ParseForms) {
  EXPECT_EQ(Q("3/6"), Rational(1, 2));
  EXPECT_EQ(Q("-2"), Rational(-2));
  EXPECT_EQ(Q(" 0.25 "), Rational(1, 4));
  EXPECT_EQ(to_string(Q("-4/6")), "-2/3");
  EXPECT_THROW(Q("1/0"), std::invalid_argument);
  EXPECT_THROW(Q("abc"), std::invalid_argument);
  EXPECT_THROW(Q(""), std::invalid_argument);
}

TEST(Rational, Pochhammer) {
  EXPECT_EQ(pochhammer(Rational(3, 2), 0), Rational(1));
  EXPECT_EQ(pochhammer(Rational(3, 2), 2), Rational(15, 4));
  EXPECT_EQ(factorial(5), Rational(120));
  EXPECT_EQ(ceil_to_long(Rational(3, 2)), 2);
  EXPECT_EQ(ceil_to_long(Rational(-3, 2)), -1);
  EXPECT_TRUE(is_integer(Q("4/2")));
}

TEST(Reflect, SpecExamples) {
  EXPECT_EQ(reflect(V("(1,-1)"), V("(3,1)")), V("(1,3)"));
  EXPECT_EQ(reflect(V("(1,0)"), V("(0,5)")), V("(0,5)"));
  EXPECT_EQ(reflect(V("(1,1)"), V("(2,0)")), V("(0,-2)"));
}

TEST(Project, SpecExamples) {
  EXPECT_EQ(project(V("(1,-1)"), V("(3,1)")), V("(2,2)"));
  EXPECT_EQ(project(V("(1)"), V("(5)")), V("(0)"));
  EXPECT_EQ(project(V("(1,1)"), V("(2,0)")), V("(1,-1)"));
}

TEST(Project, Errors) {
  EXPECT_THROW(project(V("(0,0)"), V("(1,2)")), std::invalid_argument);
  EXPECT_THROW(project(V("(1,0)"), V("(1,2,3)")), std::invalid_argument);
  EXPECT_THROW(reflect(V("(0)"), V("(1)")), std::invalid_argument);
}

TEST(Project, RandomInvariants) {
  std::mt19937_64 g(11);
  std::uniform_int_distribution<int> d(-5, 5), den(1, 4), dim(1, 6);
  for (int s = 0; s < 200; ++s) {
    std::size_t n = dim(g);
    std::vector<Rational> a, x;
    for (std::size_t i = 0; i < n; ++i) {
      a.emplace_back(d(g), den(g));
      x.emplace_back(d(g), den(g));
    }
    for (auto& q : a) q.canonicalize();
    for (auto& q : x) q.canonicalize();
    RationalVector alpha(a), xv(x);
    if (alpha.is_zero()) continue;
    auto t = project(alpha, xv);
    EXPECT_EQ(project(alpha, t), t);
    EXPECT_EQ(dot(t, alpha), 0);
    EXPECT_EQ(Rational(2) * t, xv + reflect(alpha, xv));
    EXPECT_EQ(reflect(alpha, reflect(alpha, xv)), xv);
  }
}

TEST(Subsystem, ValidateExamples) {
  EXPECT_NO_THROW(validate_subsystem({V("(1,-1,0,0)"), V("(0,0,1,-1)")}, {1, 1}, 4));
  EXPECT_NO_THROW(validate_subsystem({V("(1,-1)"), V("(1,1)")}, {1, 1}, 2));
  try {
    validate_subsystem({V("(1,-1,0)"), V("(0,1,-1)")}, {1, 1}, 3);
    FAIL() << "accepted non-orthogonal roots";
  } catch (const NonOrthogonalRoots& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
  }
  EXPECT_THROW(validate_subsystem({V("(0,0)")}, {1}, 2), std::invalid_argument);
  EXPECT_THROW(validate_subsystem({V("(1,0)")}, {1, 2}, 2), std::invalid_argument);
}

TEST(Subsystem, BuildA) {
  auto s4 = build_subsystem_A(4, {1, 2});
  ASSERT_EQ(s4.size(), 2u);
  EXPECT_EQ(s4.root(0), V("(1,-1,0,0)"));
  EXPECT_EQ(s4.root(1), V("(0,0,1,-1)"));
  EXPECT_EQ(build_subsystem_A(3, {1}).root(0), V("(1,-1,0)"));
  EXPECT_EQ(build_subsystem_A(2, {1}).root(0), V("(1,-1)"));
  EXPECT_THROW(build_subsystem_A(4, {1}), std::invalid_argument);
}

TEST(Subsystem, BuildB) {
  auto s2 = build_subsystem_B(2, {Rational(1, 2)}, {Rational(3, 2)});
  ASSERT_EQ(s2.size(), 2u);
  EXPECT_EQ(s2.root(0), V("(1,1)"));
  EXPECT_EQ(s2.root(1), V("(1,-1)"));
  EXPECT_EQ(s2.kappa(0), Rational(1, 2));
  EXPECT_EQ(s2.kappa(1), Rational(3, 2));
  EXPECT_EQ(build_subsystem_B(4, {1, 1}, {1, 1}).size(), 4u);
  auto s5 = build_subsystem_B(5, {1, 1}, {1, 1});
  EXPECT_EQ(s5.size(), 4u);
  for (std::size_t i = 0; i < s5.size(); ++i) EXPECT_EQ(s5.root(i)[4], 0);
  EXPECT_THROW(build_subsystem_B(4, {1}, {1, 1}), std::invalid_argument);
}

TEST(Decompose, Examples) {
  auto a = build_subsystem_A(2, {1});
  auto d = decompose_xi(V("(1,0)"), a);
  EXPECT_EQ(d.coefficients, std::vector<Rational>{Rational(1, 2)});
  EXPECT_EQ(d.residual, V("(1/2,1/2)"));

  auto d2 = decompose_xi(V("(1,-1)"), a);
  EXPECT_EQ(d2.coefficients[0], 1);
  EXPECT_TRUE(d2.residual.is_zero());

  auto b = build_subsystem_B(5, {1, 1}, {1, 1});
  auto d3 = decompose_xi(RationalVector::unit(5, 4), b);
  for (const auto& c : d3.coefficients) EXPECT_EQ(c, 0);
  EXPECT_EQ(d3.residual, RationalVector::unit(5, 4));
  EXPECT_THROW(decompose_xi(V("(1,0,0)"), a), std::invalid_argument);
}

TEST(Subsystem, JsonRoundTrip) {
  auto s = build_subsystem_B(4, {Rational(1, 2), 2}, {Rational(3, 2), 1});
  auto j = to_json(s);
  EXPECT_EQ(j["dim"], 4);
  EXPECT_EQ(j["kappas"][0], "1/2");
  EXPECT_EQ(subsystem_from_json(j), s);
  j["roots"][1] = {"1", "1", "0", "0"};
  EXPECT_THROW(subsystem_from_json(j), std::invalid_argument);
}

TEST(Vector, TextRoundTrip) {
  auto v = V("(1/2, -3, 0)");
  EXPECT_EQ(parse_vector(to_string(v)), v);
  EXPECT_THROW(V("1,2"), std::invalid_argument);
  EXPECT_THROW(V("(1, x)"), std::invalid_argument);
  EXPECT_THROW(V("()"), std::invalid_argument);
}
