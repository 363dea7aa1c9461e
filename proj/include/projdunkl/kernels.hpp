#pragma once

// Sweep kernels with an OpenMP path and a serial reference path. Both return
// identical results in identical order.

#include "projdunkl/fault.hpp"
#include "projdunkl/functions.hpp"
#include "projdunkl/mpoly.hpp"
#include "projdunkl/rootgeom.hpp"
#include "projdunkl/transform.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace projdunkl {

enum class Execution { Serial, Parallel };

/// body(i) for i in [0,n); exceptions are collected and the first (by index)
/// rethrown after the loop.
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

/// [T_xi, T_eta] on every monomial of degree <= max_degree. The two operators
/// may carry different multiplicities (fault injection), so no subsystem
/// equality check happens here.
struct CommutatorCase {
  std::vector<RationalVector> roots;
  std::vector<Rational> kappas_xi;
  std::vector<Rational> kappas_eta;
  RationalVector xi;
  RationalVector eta;
  int max_degree = 0;
};

struct SweepOutcome {
  std::size_t monomials_checked = 0;
  std::optional<MPoly> monomial;  // first failing input, grlex order
  std::optional<MPoly> witness;   // the nonzero difference it produced
  bool passed() const { return !witness; }
};

SweepOutcome commutator_case(const CommutatorCase& c);
std::vector<SweepOutcome> commutator_sweep(const std::vector<CommutatorCase>& cases, Execution exec);

/// T_xi (chi~ m) == chi~ (d_xi m) on every monomial of degree <= max_degree.
/// Fault::DropProjection omits the first root's difference term from T.
struct IntertwiningCase {
  OrthogonalSubsystem subsystem;
  RationalVector xi;
  int max_degree = 0;
  Fault fault = Fault::None;
};

SweepOutcome intertwining_case(const IntertwiningCase& c, Execution exec);
std::vector<SweepOutcome> intertwining_sweep(const std::vector<IntertwiningCase>& cases, Execution exec);

/// bold M_kappa(i lambda x) over the product grid, kappa-major then lambda then x.
std::vector<Complex> kummer_grid(const std::vector<double>& kappas, const std::vector<double>& lambdas,
                                 const std::vector<double>& xs, Execution exec);

/// F_kappa f on req.lambda_grid, one task per lambda.
std::vector<Complex> transform_grid(const TransformRequest& req, Execution exec);

}  // namespace projdunkl
