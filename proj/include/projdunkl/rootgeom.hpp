#pragma once

// Exact root geometry: reflections, hyperplane projections and orthogonal
// subsystems of roots. Everything here is rational; no floating point.

#include "projdunkl/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace projdunkl {

class RationalVector {
 public:
  /// Throws std::invalid_argument when `coords` is empty.
  explicit RationalVector(std::vector<Rational> coords);

  static RationalVector zero(std::size_t dim);
  /// Standard basis vector e_{j+1} (zero-based `j`).
  static RationalVector unit(std::size_t dim, std::size_t j);

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }
  bool is_zero() const;
  std::vector<double> to_doubles() const;

  RationalVector& operator+=(const RationalVector& other);
  RationalVector& operator-=(const RationalVector& other);
  RationalVector& operator*=(const Rational& s);

  friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Rational> coords_;
};

RationalVector operator+(RationalVector a, const RationalVector& b);
RationalVector operator-(RationalVector a, const RationalVector& b);
RationalVector operator*(const Rational& s, RationalVector v);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational norm2(const RationalVector& a);

/// s_alpha(x) = x - 2 <x,alpha>/|alpha|^2 alpha.
RationalVector reflect(const RationalVector& alpha, const RationalVector& x);
/// tau_alpha(x) = x - <x,alpha>/|alpha|^2 alpha, projection onto alpha's hyperplane.
RationalVector project(const RationalVector& alpha, const RationalVector& x);

/// Text form "(a/b, c, -d/e)".
std::string to_string(const RationalVector& v);
RationalVector parse_vector(std::string_view text);

class NonOrthogonalRoots : public std::invalid_argument {
 public:
  /// Indices are one-based, matching the error message.
  NonOrthogonalRoots(std::size_t first, std::size_t second);
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Pairwise-orthogonal nonzero roots alpha_1..alpha_n in R^N with one
/// multiplicity per root. Only obtainable through validate_subsystem (or the
/// builders that call it), so the invariants always hold.
class OrthogonalSubsystem {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return roots_.size(); }
  const RationalVector& root(std::size_t i) const { return roots_[i]; }
  const Rational& kappa(std::size_t i) const { return kappas_[i]; }
  std::span<const RationalVector> roots() const { return roots_; }
  std::span<const Rational> kappas() const { return kappas_; }

  /// Same roots, new multiplicities (count must match).
  OrthogonalSubsystem with_kappas(std::vector<Rational> kappas) const;

  friend bool operator==(const OrthogonalSubsystem&, const OrthogonalSubsystem&) = default;

 private:
  friend OrthogonalSubsystem validate_subsystem(std::vector<RationalVector>, std::vector<Rational>, std::size_t);
  OrthogonalSubsystem(std::size_t dim, std::vector<RationalVector> roots, std::vector<Rational> kappas)
      : dim_(dim), roots_(std::move(roots)), kappas_(std::move(kappas)) {}

  std::size_t dim_;
  std::vector<RationalVector> roots_;
  std::vector<Rational> kappas_;
};

OrthogonalSubsystem validate_subsystem(std::vector<RationalVector> roots, std::vector<Rational> kappas,
                                       std::size_t dim);

/// alpha_i = e_{2i-1} - e_{2i}, i = 1..floor(N/2).
OrthogonalSubsystem build_subsystem_A(std::size_t N, std::vector<Rational> kappas);
/// alpha_i^+ = e_{2i-1} + e_{2i}, alpha_i^- = e_{2i-1} - e_{2i}, stored as
/// (alpha_1^+, alpha_1^-, alpha_2^+, ...) with matching multiplicities.
OrthogonalSubsystem build_subsystem_B(std::size_t N, std::vector<Rational> kappas_plus,
                                      std::vector<Rational> kappas_minus);
/// Coordinate roots e_1..e_N (direct product of rank-one models).
OrthogonalSubsystem build_subsystem_direct(std::size_t N, std::vector<Rational> kappas);

struct XiDecomposition {
  std::vector<Rational> coefficients;  // xi_i = <xi,alpha_i>/|alpha_i|^2
  RationalVector residual;             // xi-hat, orthogonal to every root
};

XiDecomposition decompose_xi(const RationalVector& xi, const OrthogonalSubsystem& subsystem);

/// {"dim":N,"roots":[["1","-1"],...],"kappas":["1/2",...]}
nlohmann::json to_json(const OrthogonalSubsystem& subsystem);
OrthogonalSubsystem subsystem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalVector& v);

}  // namespace projdunkl
