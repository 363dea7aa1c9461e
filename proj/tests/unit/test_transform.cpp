#include "projdunkl/catalog.hpp"
#include "projdunkl/errors.hpp"
#include "projdunkl/kernels.hpp"
#include "projdunkl/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace projdunkl;

TEST(Catalog, NamesAndErrors) {
  EXPECT_EQ(catalog_names().size(), 6u);
  EXPECT_THROW(catalog_function("nope"), std::invalid_argument);
  for (const auto& n : smooth_compact_names()) EXPECT_TRUE(catalog_function(n).compact()) << n;
  EXPECT_FALSE(catalog_function("exp").compact());
  auto b = catalog_function("bump");
  EXPECT_EQ(b(1.0), Complex(0));
  EXPECT_NEAR(b(0.0).real(), std::exp(-1.0), 1e-16);
  EXPECT_EQ(catalog_function("indicator").max_order, 0);
}

TEST(Catalog, JetsMatchFiniteDifferences) {
  for (const auto& name : {"bump", "bump_shifted", "smooth_indicator", "gaussian", "exp"}) {
    auto f = catalog_function(name);
    for (double x : {-0.6, 0.2, 0.9, 1.1, 2.9}) {
      if (x <= f.lo || x >= f.hi) continue;
      auto d = f.derivatives(x, 2);
      double h = 1e-5;
      Complex fd1 = (f(x + h) - f(x - h)) / (2 * h);
      Complex fd2 = (f.derivatives(x + h, 1)[1] - f.derivatives(x - h, 1)[1]) / (2 * h);
      EXPECT_LT(std::abs(d[1] - fd1), 1e-7 * std::max(1.0, std::abs(d[1]))) << name << " " << x;
      EXPECT_LT(std::abs(d[2] - fd2), 1e-6 * std::max(1.0, std::abs(d[2]))) << name << " " << x;
    }
  }
  EXPECT_THROW(catalog_function("indicator").derivatives(0.0, 1), std::domain_error);
}

TEST(Transform, FourierExamples) {
  TransformRequest ind{0.0, catalog_function("indicator"), {std::numbers::pi, 1.0}};
  auto v = kummer_transform(ind);
  EXPECT_LT(std::abs(v[0]), 1e-8);
  EXPECT_NEAR(v[1].real(), 2 * std::sin(1.0), 1e-12);
  TransformRequest g{0.0, catalog_function("gaussian"), {0.0, 1.0, 2.5}};
  auto w = kummer_transform(g);
  for (std::size_t i = 0; i < 3; ++i) {
    double l = g.lambda_grid[i];
    EXPECT_NEAR(std::abs(w[i] - std::sqrt(2 * std::numbers::pi) * std::exp(-l * l / 2)), 0.0, 1e-8);
  }
}

TEST(Transform, ZeroKappaIsTheFourierPath) {
  TransformRequest r{0.0, catalog_function("bump_shifted"), {0.0, 0.7, 3.0, 11.0}};
  EXPECT_EQ(kummer_transform(r), fourier_transform(r));
}

TEST(Transform, Validation) {
  EXPECT_THROW((TransformRequest{-0.5, catalog_function("bump"), {1.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((TransformRequest{0.5, catalog_function("exp"), {1.0}}.validate()), std::invalid_argument);
  EXPECT_THROW((TransformRequest{0.5, catalog_function("bump"), {}}.validate()), std::invalid_argument);
  TransformRequest r{0.5, catalog_function("bump"), {1.0}};
  r.order = 1;
  EXPECT_THROW(r.validate(), std::invalid_argument);
}

TEST(Transform, BudgetExhaustion) {
  TransformRequest r{0.5, catalog_function("smooth_indicator"), {500.0}};
  r.panel_budget = 10;
  EXPECT_THROW(kummer_transform(r), ConvergenceError);
}

TEST(Transform, SupBound) {
  for (const auto& name : {"bump", "smooth_indicator", "indicator", "gaussian"}) {
    auto f = catalog_function(name);
    double l1 = l1_norm(f);
    for (double k : {0.0, 1.0, 2.0}) {
      TransformRequest r{k, f, {0.0, 0.5, 1.0, 3.0, 7.0, 15.0}};
      for (auto v : kummer_transform(r)) EXPECT_LE(std::abs(v), l1 + 1e-9) << name << " " << k;
    }
  }
}

TEST(Transform, SupBoundFailsForHalfKappaAtZero) {
  // F_kappa f(0) = int f / Gamma(kappa+1) exceeds ||f||_1 when Gamma(kappa+1) < 1
  auto f = catalog_function("bump");
  TransformRequest r{0.5, f, {0.0}};
  EXPECT_NEAR(kummer_transform(r)[0].real(), l1_norm(f) / std::tgamma(1.5), 1e-12);
  EXPECT_GT(std::abs(kummer_transform(r)[0]), l1_norm(f));
}

TEST(Transform, Factorization) {
  TransformRequest r{0.5, catalog_function("bump"), {0.0, 1.0, 2.0, 5.0}};
  auto rep = factorization_check(r);
  EXPECT_FALSE(rep.skipped);
  EXPECT_LT(rep.max_discrepancy, 1e-7);
  EXPECT_NEAR(rep.direct[0].real(), l1_norm(r.f) / std::tgamma(1.5), 1e-12);
  EXPECT_NEAR(rep.factored[0].real(), rep.direct[0].real(), 1e-7);
  auto j = rep.to_json();
  EXPECT_TRUE(j.contains("max_discrepancy"));

  auto bad = factorization_check(r, Fault::PerturbKappa);
  EXPECT_GT(bad.max_discrepancy, 1e-4);

  TransformRequest z{0.0, catalog_function("bump"), {1.0}};
  EXPECT_TRUE(factorization_check(z).skipped);
}

TEST(Transform, Decay) {
  auto rep = c0_decay_check(TransformRequest{0.5, catalog_function("bump"), {1.0}});
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  auto ind = c0_decay_check(TransformRequest{0.0, catalog_function("indicator"), {1.0}});
  EXPECT_TRUE(ind.passed()) << ind.to_json().dump();
  EXPECT_NEAR(ind.magnitude[0], std::abs(2 * std::sin(10.0) / 10), 1e-9);
}

TEST(Transform, SerialAndParallelGridsAgree) {
  TransformRequest r{1.0, catalog_function("bump_shifted"), {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}};
  EXPECT_EQ(transform_grid(r, Execution::Serial), transform_grid(r, Execution::Parallel));
}
