#include "projdunkl/errors.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/opengine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

using namespace projdunkl;

TEST(KummerM, Examples) {
  EXPECT_EQ(kummer_M(Complex(1.5, 0), Complex(2.5, 0), Complex(0)), Complex(1));
  EXPECT_NEAR(kummer_M(Complex(1), Complex(1), Complex(1)).real(), std::numbers::e, 4e-16);
  EXPECT_NEAR(kummer_M(Complex(1), Complex(2), Complex(1)).real(), std::numbers::e - 1, 4e-16);
  EXPECT_LT(std::abs(kummer_M(Complex(0.3), Complex(0.3), Complex(2, -3)) - std::exp(Complex(2, -3))), 1e-14);
}

TEST(KummerM, ParamsValidation) {
  EXPECT_THROW((KummerParams{Complex(1), Complex(0)}.validate()), std::domain_error);
  EXPECT_THROW((KummerParams{Complex(1), Complex(-2)}.validate()), std::domain_error);
  EXPECT_THROW((KummerParams{Complex(1), Complex(2), 1e-8}.validate()), std::invalid_argument);
  EXPECT_THROW((KummerParams{Complex(1), Complex(2), 1e-17, 10}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((KummerParams{Complex(1), Complex(0.5)}.validate()));
}

TEST(KummerM, ConvergenceError) {
  KummerParams p{Complex(1), Complex(1.5), 1e-17, 50};
  EXPECT_THROW(kummer_M_series(p, Complex(0, 35)), ConvergenceError);
}

TEST(KummerM, SeriesMatchesIntegral) {
  for (double k : {0.5, 1.0, 2.0}) {
    KummerParams p{Complex(1), Complex(k + 1)};
    for (double y = -30; y <= 30; y += 2.5) {
      Complex s = kummer_M_series(p, Complex(0, y)), q = kummer_M_integral(1, k + 1, Complex(0, y));
      EXPECT_LE(std::abs(s - q), 1e-11 * std::abs(s)) << k << " " << y;
    }
  }
}

TEST(KummerM, RangeOfTheTwoPaths) {
  // series accepts kappa in (-1, 0], the integral path needs b > a > 0
  EXPECT_NO_THROW(bold_M(-0.5, Complex(0, 2)));
  EXPECT_THROW(kummer_M_integral(1, 1, Complex(0, 50)), std::domain_error);
  EXPECT_THROW(kummer_M_integral(1, 0.5, Complex(0, 50)), std::domain_error);
  EXPECT_THROW(bold_M(-1.0, Complex(1)), std::domain_error);
}

TEST(KummerM, LargeArgumentUsesIntegral) {
  // past the switch: compare against the closed form for b = 2, M(1,2;z) = (e^z - 1)/z
  for (double y : {45.0, 120.0, 800.0}) {
    Complex z(0, y);
    EXPECT_LT(std::abs(kummer_M(Complex(1), Complex(2), z) - (std::exp(z) - 1.0) / z), 1e-13);
  }
}

TEST(KummerM, ExtendedPrecisionBackend) {
  ::setenv("PROJDUNKL_PRECISION", "extended", 1);
  EXPECT_EQ(precision_from_env(), Precision::Extended);
  Complex e = bold_M(0.5, Complex(0, 300));
  ::setenv("PROJDUNKL_PRECISION", "double", 1);
  Complex d = bold_M(0.5, Complex(0, 300));
  EXPECT_LT(std::abs(e - d), 1e-13);
  ::setenv("PROJDUNKL_PRECISION", "nonsense", 1);
  EXPECT_THROW(precision_from_env(), std::invalid_argument);
  ::unsetenv("PROJDUNKL_PRECISION");
  EXPECT_EQ(precision_from_env(), Precision::Double);
}

TEST(BoldM, Examples) {
  EXPECT_NEAR(bold_M(1.0, 0.0).real(), 1.0, 1e-16);
  EXPECT_NEAR(bold_M(0.5, 0.0).real(), 1 / std::tgamma(1.5), 1e-16);
  EXPECT_NEAR(bold_M(0.0, 1.0).real(), std::numbers::e, 4e-16);
}

TEST(BoldM, UnitBoundOnImaginaryAxis) {
  for (double k : {1.0, 2.0})
    for (double t = -50; t <= 50; t += 0.1) EXPECT_LE(std::abs(bold_M(k, Complex(0, t))), 1.0 + 1e-15) << k << " " << t;
}

TEST(BoldM, HalfKappaExceedsOneNearZero) {
  // |M_{1/2}(0)| = 1/Gamma(3/2) > 1; the unit bound does not hold for kappa in (0,1)
  EXPECT_GT(std::abs(bold_M(0.5, Complex(0, 0.05))), 1.12);
}

TEST(BoldM, DerivativeFormula) {
  for (double k : {0.5, 2.0})
    for (Complex z : {Complex(0.3, 1), Complex(-2, 5)}) {
      double h = 1e-5;
      Complex fd = (bold_M(k, z + h) - bold_M(k, z - h)) / (2 * h);
      EXPECT_LT(std::abs(bold_M_derivative(k, 1, z) - fd), 1e-8);
      EXPECT_LT(std::abs(bold_M_derivative(k, 0, z) - bold_M(k, z)), 1e-15);
    }
}

TEST(BoldM, Decay) {
  double m10 = std::abs(bold_M(0.5, Complex(0, 10))), m100 = std::abs(bold_M(0.5, Complex(0, 100))),
         m1000 = std::abs(bold_M(0.5, Complex(0, 1000)));
  EXPECT_GT(m10, m100);
  EXPECT_GT(m100, m1000);
  EXPECT_LT(m1000, 0.15);
  EXPECT_NEAR(m1000, 0.0317, 5e-4);
}

TEST(EigenRankOne, Examples) {
  EXPECT_EQ(eigen_rank_one(1.5, 3.0, 0.0), Complex(1));
  for (double x : {-1.0, 0.4, 2.0}) EXPECT_LT(std::abs(eigen_rank_one(0.0, 2.0, x) - std::exp(Complex(0, 2 * x))), 1e-15);
  auto f = eigen_rank_one_function(1.5, 3.0);
  for (double x : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    EXPECT_LT(std::abs(one_var_T(1.5, f, x) - Complex(0, 3) * f(x)), 1e-12) << x;
  }
  EXPECT_LT(std::abs(one_var_T(1.5, f, 0.0) - Complex(0, 3)), 1e-14);
}

TEST(OdeResidual, Examples) {
  EXPECT_LT(std::abs(generalized_ode_residual(0.5, 2.0, eigen_rank_one_function(0.5, 2.0), 1.0)), 1e-10);
  OneVarFunction one;
  one.jet = [](double, int order) {
    std::vector<Complex> d(order + 1, 0.0);
    d[0] = 1;
    return d;
  };
  EXPECT_EQ(generalized_ode_residual(0.7, 0.0, one, 1.3), Complex(0));
  OneVarFunction id;
  id.jet = [](double x, int order) {
    std::vector<Complex> d(order + 1, 0.0);
    d[0] = x;
    if (order >= 1) d[1] = 1;
    return d;
  };
  EXPECT_NEAR(generalized_ode_residual(0.7, 0.0, id, 1.3).real(), 1.7, 1e-15);
}

TEST(Multivar, OriginAndDiagonal) {
  MultivarEigenfunction a{EigenFamily::AType, {0.5, 1.5}, {Complex(1), Complex(2), Complex(-1), Complex(0)}, 4};
  std::vector<double> zero(4, 0.0), diag{0.3, 0.3, -1.2, -1.2};
  EXPECT_LE(std::abs(eigen_multivar(a, zero) - 1.0), 4 * std::numeric_limits<double>::epsilon());
  Complex want = std::exp(Complex(0, 1 * 0.3 + 2 * 0.3 + -1 * -1.2));
  EXPECT_LT(std::abs(eigen_multivar(a, diag) - want), 1e-15);
  MultivarEigenfunction b{EigenFamily::BType, {0.5, 1.0, 1.5, 2.0}, std::vector<Complex>(5, 0.7), 5};
  std::vector<double> z5(5, 0.0);
  EXPECT_LE(std::abs(eigen_multivar(b, z5) - 1.0), 4 * std::numeric_limits<double>::epsilon());
}

TEST(Multivar, Validation) {
  EXPECT_THROW((MultivarEigenfunction{EigenFamily::AType, {0.5}, {1, 2, 3, 4}, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((MultivarEigenfunction{EigenFamily::DirectProduct, {0.5, 0}, {1, 2}, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((MultivarEigenfunction{EigenFamily::BType, {1, 1}, {1, 2, 3}, 2}.validate()), std::invalid_argument);
}

TEST(Multivar, ResidualSpecExample) {
  MultivarEigenfunction a{EigenFamily::AType, {0.5, 1.5}, {Complex(1), Complex(2), Complex(-1), Complex(0)}, 4};
  auto s = numeric_subsystem(a);
  auto f = eigen_test_function(s, a.lambda);
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x{u(g), u(g), u(g), u(g)}, xi{u(g), u(g), u(g), u(g)};
    Complex lx = 0;
    for (int j = 0; j < 4; ++j) lx += a.lambda[j] * xi[j];
    Complex r = apply_T_numeric_raw(f, x, xi, s.roots, s.kappas) - Complex(0, 1) * lx * f.value(x);
    EXPECT_LT(std::abs(r), 1e-10);
    EXPECT_LT(std::abs(f.value(x) - eigen_multivar(a, x)), 1e-13);
    EXPECT_TRUE(gradient_consistent(f, x));
  }
}

TEST(Multivar, AllFamiliesLiteralVersusGeneral) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (auto fam : {EigenFamily::DirectProduct, EigenFamily::AType, EigenFamily::BType}) {
    for (std::size_t N = 2; N <= 5; ++N) {
      std::size_t nk = fam == EigenFamily::DirectProduct ? N : fam == EigenFamily::AType ? N / 2 : 2 * (N / 2);
      MultivarEigenfunction m{fam, std::vector<double>(nk, 0.75), {}, N};
      for (std::size_t i = 0; i < N; ++i) m.lambda.emplace_back(u(g), 0);
      m.kappas.back() = 2.0;
      auto s = numeric_subsystem(m);
      for (int i = 0; i < 5; ++i) {
        std::vector<double> x(N);
        for (auto& v : x) v = u(g);
        EXPECT_LT(std::abs(eigen_multivar(m, x) - eigen_general(s, m.lambda, x)), 1e-12) << to_string(fam) << N;
      }
    }
  }
}

TEST(Multivar, PerturbedRootBreaksEigenEquation) {
  MultivarEigenfunction a{EigenFamily::AType, {0.5, 1.5}, {Complex(1), Complex(2), Complex(-1), Complex(0)}, 4};
  auto f = eigen_test_function(numeric_subsystem(a), a.lambda);
  auto bad = numeric_subsystem(a, Fault::PerturbRoot);
  std::vector<double> x{0.4, -1.1, 0.9, 0.2}, xi{1, 0.5, -0.3, 0.8};
  Complex lx = 0;
  for (int j = 0; j < 4; ++j) lx += a.lambda[j] * xi[j];
  EXPECT_GT(std::abs(apply_T_numeric_raw(f, x, xi, bad.roots, bad.kappas) - Complex(0, 1) * lx * f.value(x)), 1e-6);
}
