#pragma once

// Kummer transform F_kappa f(lambda) = int f(x) M_kappa(i lambda x) dx (bold M,
// no 2 pi normalization) and the classical Fourier transform at kappa = 0.

#include "projdunkl/fault.hpp"
#include "projdunkl/functions.hpp"

#include <json.hpp>

#include <vector>

namespace projdunkl {

struct TransformRequest {
  double kappa = 0;  // 0 selects the Fourier path
  OneVarFunction f;
  std::vector<double> lambda_grid;
  int order = 16;               // Gauss-Legendre points per panel
  int panel_budget = 400000;    // total panels per lambda before ConvergenceError
  double tolerance = 1e-13;     // absolute, per unit length

  /// kappa >= 0, finite support, non-empty grid, order in [2, 200].
  void validate() const;
};

/// Adaptive Gauss-Legendre over the support of f: panels start no wider than
/// pi/max(1,|lambda|) and are bisected until a panel and its halves agree.
Complex integrate_oscillatory(const std::function<Complex(double)>& g, double lo, double hi, double lambda,
                              const TransformRequest& opts);

/// One value per grid entry, grid order. kappa == 0 dispatches to fourier_transform.
std::vector<Complex> kummer_transform(const TransformRequest& req);
std::vector<Complex> fourier_transform(const TransformRequest& req);
Complex kummer_transform_at(const TransformRequest& req, double lambda);
Complex fourier_transform_at(const TransformRequest& req, double lambda);

/// int |f| over the support.
double l1_norm(const OneVarFunction& f);

struct FactorizationReport {
  double kappa = 0;
  std::vector<double> lambda;
  std::vector<Complex> direct;    // F_kappa f
  std::vector<Complex> factored;  // F(dual chi f)
  double max_discrepancy = 0;
  bool skipped = false;           // kappa == 0: the dual operator is not defined
  nlohmann::json to_json() const;
};

/// Fault::PerturbKappa builds the dual operator with kappa + 1/2.
FactorizationReport factorization_check(const TransformRequest& req, Fault fault = Fault::None);

struct DecayReport {
  double kappa = 0;
  std::vector<double> lambda{10, 100, 1000};
  std::vector<double> magnitude;
  double l1 = 0;
  double factor = 0.05;
  bool monotone = false;
  bool below_threshold = false;
  bool passed() const { return monotone && below_threshold; }
  nlohmann::json to_json() const;
};

/// |F_kappa f(lambda)| at 10, 100, 1000 must decrease and end below factor * ||f||_1.
DecayReport c0_decay_check(const TransformRequest& req, double factor = 0.05);

}  // namespace projdunkl
