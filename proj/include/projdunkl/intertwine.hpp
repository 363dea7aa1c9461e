#pragma once

// The intertwining operator
//   chi f(x) = (1/Gamma(kappa)) int_{[0,1]^n} f(h(t,x)) prod (1-t_j)^{kappa_j-1} dt,
// Erdelyi-Kober operators I^{gamma,delta}, D^{gamma,delta}, and the dual operator.

#include "projdunkl/functions.hpp"
#include "projdunkl/gamma_ratio.hpp"
#include "projdunkl/mpoly.hpp"
#include "projdunkl/rootgeom.hpp"

#include <span>
#include <vector>

namespace projdunkl {

/// x + sum_j (t_j - 1) <x,alpha_j>/|alpha_j|^2 alpha_j.
RationalVector h_map(std::span<const Rational> t, const RationalVector& x, const OrthogonalSubsystem& s);
std::vector<double> h_map(std::span<const double> t, std::span<const double> x, const OrthogonalSubsystem& s);

/// chi~ p = prod Gamma(kappa_j + 1) * chi p, with exact rational coefficients;
/// the true normalization is scale = 1/prod Gamma(kappa_j + 1).
struct ScaledChi {
  MPoly poly;
  GammaRatio scale;
};

/// Root by root: chi~_alpha p = sum_k c^k/(kappa+1)_k (d_alpha^k p) o tau_alpha,
/// c = <x,alpha>/|alpha|^2. Requires every kappa_j > 0.
ScaledChi chi_poly_scaled(const MPoly& p, const OrthogonalSubsystem& s);
MPoly chi_tilde_raw(const MPoly& p, std::span<const RationalVector> roots, std::span<const Rational> kappas);

/// Reference path: expands p(h(t,x)) with t_1..t_n as extra variables and
/// integrates each t_j^m exactly (m!/(kappa_j+1)_m after scaling). Slow.
MPoly chi_tilde_by_substitution(const MPoly& p, const OrthogonalSubsystem& s);

/// Tensor Gauss-Jacobi quadrature of the defining integral (unscaled chi).
Complex chi_numeric(const TestFunction& f, const OrthogonalSubsystem& s, std::span<const double> x, int order);
Complex chi_numeric_raw(const TestFunction& f, std::span<const std::vector<double>> roots,
                        std::span<const double> kappas, std::span<const double> x, int order);

// Erdelyi-Kober operators, exact layer (one variable).
// I^{gamma,delta} x^m = Gamma(gamma+m+1)/Gamma(gamma+m+delta+1) x^m, I^{gamma,0} = identity.

GammaPoly ek_I(const GammaPoly& p, const Rational& gamma, const Rational& delta);
/// prod_{k=1}^{n} (gamma + k + x d/dx) I^{gamma+delta, n-delta}, n = ceil(delta).
GammaPoly ek_D(const GammaPoly& p, const Rational& gamma, const Rational& delta);
/// (c + x d/dx) p.
GammaPoly euler_shift(const GammaPoly& p, const Rational& c);

/// Rank-one chi = I^{0,kappa} (unscaled).
GammaPoly chi_one_var(const GammaPoly& p, const Rational& kappa);
/// D^{0,kappa} = prod_{j=1}^{n} (j + x d/dx) I^{kappa, n-kappa}.
GammaPoly chi_inverse_one_var(const GammaPoly& p, const Rational& kappa);
/// The inverse with I^{kappa+1, n-kappa} in place of I^{kappa, n-kappa}; kept
/// to show it is not a left inverse of chi for non-integer kappa.
GammaPoly chi_inverse_variant(const GammaPoly& p, const Rational& kappa);

// Numeric layer on jets. Each returned function evaluates its quadrature
// lazily; `order` is the Gauss-Jacobi order per integral.

OneVarFunction ek_I_numeric(const OneVarFunction& g, double gamma, double delta, int order = 48);
OneVarFunction ek_D_numeric(const OneVarFunction& g, double gamma, double delta, int order = 48);
OneVarFunction chi_one_var_numeric(const OneVarFunction& g, double kappa, int order = 48);
OneVarFunction chi_inverse_one_var_numeric(const OneVarFunction& g, double kappa, int order = 48);

/// (1/Gamma(kappa)) int_{|x|}^{A} (t-|x|)^{kappa-1} t^{-kappa} g(sgn(x) t) dt.
/// Requires kappa > 0, compact support, x != 0; zero when |x| is past the support.
Complex dual_chi(const OneVarFunction& g, double kappa, double x, int order = 32);

/// Nodes, weights and values of the dual operator for outer integrals
/// int F(x) (dual chi g)(x) dx; panels graded toward 0 (log singularity) and
/// toward the support ends.
struct DualSamples {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<Complex> value;
};
DualSamples dual_chi_samples(const OneVarFunction& g, double kappa, int order = 20);

/// int (chi f) g and int f (dual chi g) for a polynomial f in one variable.
struct DualityPairing {
  Complex chi_side;
  Complex dual_side;
  double discrepancy() const { return std::abs(chi_side - dual_side); }
};
DualityPairing duality_pairing(const MPoly& f, const OneVarFunction& g, const Rational& kappa);

}  // namespace projdunkl
