#include "projdunkl/gamma_ratio.hpp"
#include "projdunkl/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

using namespace projdunkl;

TEST(GammaRatio, ValuesAndCanonicalForm) {
  EXPECT_NEAR(GammaRatio::gamma(Rational(1, 2)).to_double(), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_EQ(GammaRatio::gamma(Rational(5, 2)), GammaRatio(Rational(3, 4), {Rational(1, 2)}, {}));
  EXPECT_TRUE((GammaRatio::gamma(3) / GammaRatio::gamma(2)).is_rational());
  EXPECT_EQ((GammaRatio::gamma(3) / GammaRatio::gamma(2)).rational_value(), 2);
  EXPECT_FALSE(GammaRatio::gamma(Rational(1, 3)).is_rational());
  EXPECT_THROW(GammaRatio::gamma(Rational(1, 3)).rational_value(), std::logic_error);
  auto g = GammaRatio(2, {Rational(7, 2)}, {Rational(3, 2), 4});
  EXPECT_EQ(g * g.inverse(), GammaRatio(1));
  EXPECT_NEAR(g.to_double(), 2 * std::tgamma(3.5) / (std::tgamma(1.5) * std::tgamma(4.0)), 1e-14);
}

TEST(GammaRatio, Poles) {
  EXPECT_THROW(GammaRatio::gamma(0), std::domain_error);
  EXPECT_THROW(GammaRatio::gamma(-3), std::domain_error);
  EXPECT_THROW(GammaRatio(1, {}, {-2}), std::domain_error);
}

TEST(GammaRatio, PrintRawForm) {
  EXPECT_EQ(to_string(GammaRatio::inverse_gamma(2)), "1/Γ(2)");
  EXPECT_EQ(to_string(GammaRatio(1)), "1");
}

TEST(GammaRatio, ReductionIsConfluent) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> coin(0, 1), num(1, 9);
  for (int s = 0; s < 300; ++s) {
    std::vector<Rational> n, d;
    for (int i = 0, k = 1 + s % 3; i < k; ++i) n.emplace_back(num(gen), 1 + coin(gen));
    for (int i = 0, k = s % 3; i < k; ++i) d.emplace_back(num(gen), 2 + coin(gen));
    for (auto& q : n) q.canonicalize();
    for (auto& q : d) q.canonicalize();
    GammaRatio base(Rational(num(gen), 7), n, d);
    GammaRatio walk = base;
    for (int step = 0; step < 12; ++step) {
      bool in_num = walk.denominator_args().empty() || coin(gen);
      std::size_t sz = in_num ? walk.numerator_args().size() : walk.denominator_args().size();
      if (sz == 0) continue;
      std::size_t idx = gen() % sz;
      const Rational& arg = in_num ? walk.numerator_args()[idx] : walk.denominator_args()[idx];
      int dir = (arg > 1 && coin(gen)) ? +1 : -1;  // stay away from poles
      walk = walk.shifted(in_num, idx, dir);
      ASSERT_EQ(walk, base);
      ASSERT_EQ(walk.canonical(), base.canonical());
    }
    EXPECT_NEAR(walk.to_double(), base.to_double(), 1e-12 * std::abs(base.to_double()));
    EXPECT_EQ(walk.reduced().canonical(), base.canonical());
  }
}

TEST(GammaPoly, Basics) {
  auto p = GammaPoly::from_poly(parse_poly("x1^2 + 3", 1));
  EXPECT_TRUE(p.is_rational());
  EXPECT_EQ(p.to_poly(), parse_poly("x1^2 + 3", 1));
  GammaPoly q;
  q.set(2, GammaRatio(0));
  EXPECT_TRUE(q.is_zero());
  EXPECT_EQ(to_string(GammaPoly::monomial(2, GammaRatio(Rational(1, 3)))), "1/3*x1^2");
  EXPECT_THROW(GammaPoly::from_poly(parse_poly("x1*x2")), std::invalid_argument);
}

TEST(Quadrature, MomentsAgainstBeta) {
  for (double kappa : {0.25, 0.5, 1.0, 1.5, 2.5, 4.0}) {
    for (int m : {4, 12, 24, 48}) {
      auto r = kappa_rule(kappa, m);
      for (int k = 0; k <= 2 * m - 1; ++k) {
        long double exact = beta_moment(kappa - 1, 0, k);
        double q = r->integrate([k](double t) { return std::pow(t, k); });
        EXPECT_LE(std::abs(q - static_cast<double>(exact)) / static_cast<double>(exact), 1e-13)
            << "kappa=" << kappa << " m=" << m << " k=" << k;
      }
    }
  }
}

TEST(Quadrature, TwoSidedWeight) {
  auto r = jacobi_rule(-0.5, 0.5, 20);
  for (int k = 0; k < 40; ++k) {
    double exact = static_cast<double>(beta_moment(-0.5, 0.5, k));
    EXPECT_LE(std::abs(r->integrate([k](double t) { return std::pow(t, k); }) - exact) / exact, 1e-13);
  }
  for (std::size_t i = 1; i < r->nodes.size(); ++i) EXPECT_LT(r->nodes[i - 1], r->nodes[i]);
  for (double w : r->weights) EXPECT_GT(w, 0);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(gauss_jacobi(-1.0, 0, 4), std::invalid_argument);
  EXPECT_THROW(gauss_jacobi(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(gauss_jacobi(0, 0, kMaxQuadratureOrder + 1), std::invalid_argument);
  EXPECT_THROW(kappa_rule(0.0, 4), std::invalid_argument);
}

TEST(Quadrature, CacheAndJson) {
  clear_quadrature_cache();
  auto a = kappa_rule(Rational(3, 2), 16);
  auto b = kappa_rule(Rational(3, 2), 16);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(quadrature_cache_size(), 1u);
  auto j = to_json(*a);
  EXPECT_EQ(j["kappa"], "3/2");
  EXPECT_EQ(j["order"], 16);
  auto back = rule_from_json(j);
  EXPECT_EQ(back.nodes, a->nodes);
  EXPECT_EQ(back.weights, a->weights);

  auto dump = dump_quadrature_cache();
  clear_quadrature_cache();
  EXPECT_EQ(quadrature_cache_size(), 0u);
  load_quadrature_cache(dump);
  EXPECT_EQ(quadrature_cache_size(), 1u);
  EXPECT_EQ(kappa_rule(Rational(3, 2), 16)->weights, a->weights);

  j["weights"].erase(0);
  EXPECT_THROW(rule_from_json(j), std::exception);
}

TEST(Quadrature, ConcurrentAccess) {
  clear_quadrature_cache();
  std::vector<std::thread> pool;
  std::vector<const QuadratureRule*> seen(8);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([t, &seen] { seen[t] = kappa_rule(0.75, 40).get(); });
  for (auto& th : pool) th.join();
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
  EXPECT_EQ(quadrature_cache_size(), 1u);
}
