#pragma once

// The projection-type differential-difference operator
//   T_xi f(x) = d_xi f(x) + sum_i kappa_i <alpha_i, xi> (f(x) - f(tau_i x)) / <x, alpha_i>
// on exact polynomials and on numeric test functions.

#include "projdunkl/fault.hpp"
#include "projdunkl/functions.hpp"
#include "projdunkl/mpoly.hpp"
#include "projdunkl/rootgeom.hpp"

#include <json.hpp>

#include <optional>
#include <span>

namespace projdunkl {

class ProjectionDunklOperator {
 public:
  ProjectionDunklOperator(OrthogonalSubsystem subsystem, RationalVector xi);

  const OrthogonalSubsystem& subsystem() const { return subsystem_; }
  const RationalVector& xi() const { return xi_; }

 private:
  OrthogonalSubsystem subsystem_;
  RationalVector xi_;
};

MPoly apply_T_poly(const ProjectionDunklOperator& op, const MPoly& p);

/// Raw form used by fault injection and the sweep kernels: roots need not be
/// validated, `kappas` pairs with `roots` by index.
MPoly apply_T_raw(const MPoly& p, const RationalVector& xi, std::span<const RationalVector> roots,
                  std::span<const Rational> kappas);

/// T_xi p rebuilt as sum_i xi_i T_{alpha_i} p + d_{xi-hat} p.
MPoly apply_T_decomposed(const ProjectionDunklOperator& op, const MPoly& p);

/// A-type coordinate form: sum_{i<=2[N/2]} (-1)^{i+1} xi_{ceil(i/2)} T_i + d_{xi-hat}
/// with T_i = d_i - (-1)^i kappa rho, rho f = (f - f o tau)/(x_{2j-1} - x_{2j}).
MPoly apply_T_A_coordinates(std::size_t N, std::span<const Rational> kappas, const RationalVector& xi,
                            const MPoly& p);

/// B-type coordinate form: sum_i (xi^+ + (-1)^{i+1} xi^-) T_i + eps xi_N d_N with
/// T_i = d_i - (-1)^i kappa^- rho^- + kappa^+ rho^+.
MPoly apply_T_B_coordinates(std::size_t N, std::span<const Rational> kappas_plus,
                            std::span<const Rational> kappas_minus, const RationalVector& xi, const MPoly& p);

/// Relative threshold below which <x,alpha> counts as "on the hyperplane".
inline constexpr double kHyperplaneTolerance = 1e-8;

Complex apply_T_numeric(const ProjectionDunklOperator& op, const TestFunction& f, std::span<const double> x);
Complex apply_T_numeric_raw(const TestFunction& f, std::span<const double> x, std::span<const double> xi,
                            std::span<const std::vector<double>> roots, std::span<const double> kappas);

/// T_xi T_eta p - T_eta T_xi p. Both operators must share roots and multiplicities.
MPoly commutator_poly(const ProjectionDunklOperator& first, const ProjectionDunklOperator& second, const MPoly& p);

/// Rank-one T_kappa on a polynomial in one variable.
MPoly one_var_T(const Rational& kappa, const MPoly& p);
/// Rank-one T_kappa f(x) = f'(x) + kappa (f(x) - f(0))/x, with (1+kappa) f'(0) at x = 0.
Complex one_var_T(double kappa, const OneVarFunction& f, double x);
/// Closed form of T_kappa^2 f(x); the series limit (1+kappa)(2+kappa) f''(0)/2 near x = 0.
Complex one_var_T_squared(double kappa, const OneVarFunction& f, double x);

struct LaplacianResult {
  MPoly double_application;      // sum_j T_j (T_j p), the reference value
  std::optional<MPoly> expanded;  // empty when the expanded form is not a polynomial
  bool consistent() const { return expanded && *expanded == double_application; }
};

/// Generalized Laplacian for the coordinate subsystem {e_1..e_N}, one
/// multiplicity per axis. The expanded form is
///   Delta p + sum_j [2k x^{-1} d_j p - (k^2+k) x^{-1} (d_j p)(tau_j x) + (k^2-k) x^{-2} (p - p o tau_j)]
/// with k = kappa_j, x = x_j. Fault::DropProjection omits the (d_j p)(tau_j x) term.
LaplacianResult laplacian_direct(std::span<const Rational> kappas, const MPoly& p, Fault fault = Fault::None);

/// {"check":"commutator","subsystem":...,"xi":...,"eta":...,"degree":d,"result":...,"witness":...}
nlohmann::json commutator_record(const OrthogonalSubsystem& subsystem, const RationalVector& xi,
                                 const RationalVector& eta, int degree, const std::optional<MPoly>& witness);

}  // namespace projdunkl
