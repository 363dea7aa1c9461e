#pragma once

// Confluent hypergeometric M(a,b;z), the normalized bold M_kappa(z) =
// M(1,kappa+1;z)/Gamma(kappa+1), and the eigenfunctions of T built from them.

#include "projdunkl/errors.hpp"
#include "projdunkl/fault.hpp"
#include "projdunkl/functions.hpp"
#include "projdunkl/rootgeom.hpp"

#include <span>
#include <string>
#include <vector>

namespace projdunkl {

enum class Precision { Double, Extended };

/// PROJDUNKL_PRECISION = double (default) | extended; anything else throws
/// std::invalid_argument. Read on every call.
Precision precision_from_env();
std::string to_string(Precision p);

/// |z| above which the integral representation replaces the series.
inline constexpr double kSeriesSwitch = 40.0;

struct KummerParams {
  Complex a;
  Complex b;
  double series_tolerance = 1e-17;
  int max_terms = 600;

  /// b not a non-positive integer; 0 < tolerance <= 1e-10; max_terms >= 50.
  void validate() const;
};

/// Series with the run-of-3 stopping rule, accumulated in quad precision
/// (__float128 where available). Throws ConvergenceError when max_terms is
/// reached or cancellation has eaten the accumulator's headroom.
Complex kummer_M_series(const KummerParams& params, Complex z);
/// Integral representation for real b > a > 0; composite Gauss-Jacobi.
Complex kummer_M_integral(double a, double b, Complex z, Precision precision = Precision::Double);

/// Dispatch: M(a,a;z) = e^z, integral path for |z| > 40 when b > a > 0 are
/// real, series otherwise.
Complex kummer_M(const KummerParams& params, Complex z, Precision precision);
Complex kummer_M(const KummerParams& params, Complex z);
Complex kummer_M(Complex a, Complex b, Complex z);

/// sum z^n / Gamma(kappa+1+n); kappa > -1.
Complex bold_M(double kappa, Complex z);
/// n-th derivative: n!/Gamma(kappa+n+1) M(n+1, kappa+n+1; z).
Complex bold_M_derivative(double kappa, int n, Complex z);

/// M(1, kappa+1; i lambda x), the solution of T_kappa f = i lambda f, f(0) = 1.
Complex eigen_rank_one(double kappa, Complex lambda, double x);
/// Same, as a jet: f^(r)(x) = (i lambda)^r r!/(kappa+1)_r M(r+1, kappa+r+1; i lambda x).
OneVarFunction eigen_rank_one_function(double kappa, Complex lambda);

/// x u'' + (kappa+1) u' - i lambda (x u' + u).
Complex generalized_ode_residual(double kappa, Complex lambda, const OneVarFunction& u, double x);

enum class EigenFamily { DirectProduct, AType, BType };
std::string to_string(EigenFamily f);

struct MultivarEigenfunction {
  EigenFamily family = EigenFamily::DirectProduct;
  /// DirectProduct: N values; AType: floor(N/2); BType: (kappa+_1..kappa+_m, kappa-_1..kappa-_m), m = floor(N/2).
  std::vector<double> kappas;
  std::vector<Complex> lambda;
  std::size_t dim = 0;

  /// Throws std::invalid_argument on a shape mismatch or kappa <= 0.
  void validate() const;
};

/// The closed forms as written for each family (product over pairs).
Complex eigen_multivar(const MultivarEigenfunction& ef, std::span<const double> x);

/// Roots and multiplicities in double precision.
struct NumericSubsystem {
  std::vector<std::vector<double>> roots;
  std::vector<double> kappas;
};
/// The family's subsystem; Fault::PerturbRoot moves alpha_1 to alpha_1 + e_N
/// (only for families where it stays orthogonal to the other roots).
NumericSubsystem numeric_subsystem(const MultivarEigenfunction& ef, Fault fault = Fault::None);
NumericSubsystem numeric_subsystem(const OrthogonalSubsystem& s);

/// e^{i<lambda, h(0,x)>} prod_j M(1, kappa_j+1; i <lambda,alpha_j><x,alpha_j>/|alpha_j|^2)
/// for any orthogonal subsystem, with its analytic gradient.
Complex eigen_general(const NumericSubsystem& s, std::span<const Complex> lambda, std::span<const double> x);
std::vector<Complex> eigen_general_gradient(const NumericSubsystem& s, std::span<const Complex> lambda,
                                            std::span<const double> x);
TestFunction eigen_test_function(const NumericSubsystem& s, std::vector<Complex> lambda, std::string id = {});

}  // namespace projdunkl
