#include "projdunkl/rootgeom.hpp"

#include <cctype>

namespace projdunkl {

namespace {

void require_same_dim(const RationalVector& a, const RationalVector& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

void require_nonzero(const RationalVector& alpha, const char* what) {
  if (alpha.is_zero()) throw std::invalid_argument(std::string(what) + ": zero root");
}

}  // namespace

RationalVector::RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("RationalVector: empty coordinate list");
}

RationalVector RationalVector::zero(std::size_t dim) { return RationalVector(std::vector<Rational>(dim)); }

RationalVector RationalVector::unit(std::size_t dim, std::size_t j) {
  if (j >= dim) throw std::invalid_argument("RationalVector::unit: index out of range");
  std::vector<Rational> c(dim);
  c[j] = 1;
  return RationalVector(std::move(c));
}

bool RationalVector::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

std::vector<double> RationalVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.get_d());
  return out;
}

RationalVector& RationalVector::operator+=(const RationalVector& other) {
  require_same_dim(*this, other, "vector add");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& other) {
  require_same_dim(*this, other, "vector subtract");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
RationalVector operator*(const Rational& s, RationalVector v) { return v *= s; }

Rational dot(const RationalVector& a, const RationalVector& b) {
  require_same_dim(a, b, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational norm2(const RationalVector& a) { return dot(a, a); }

RationalVector reflect(const RationalVector& alpha, const RationalVector& x) {
  require_nonzero(alpha, "reflect");
  require_same_dim(alpha, x, "reflect");
  Rational c = 2 * dot(x, alpha) / norm2(alpha);
  return x - c * alpha;
}

RationalVector project(const RationalVector& alpha, const RationalVector& x) {
  require_nonzero(alpha, "project");
  require_same_dim(alpha, x, "project");
  Rational c = dot(x, alpha) / norm2(alpha);
  return x - c * alpha;
}

std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

RationalVector parse_vector(std::string_view text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw std::invalid_argument("vector must be written as (a, b, ...): '" + std::string(text) + "'");
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((i < open || i > close) && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("unexpected text outside parentheses at position " + std::to_string(i) + " in '" +
                                  std::string(text) + "'");
    }
  }
  auto body = text.substr(open + 1, close - open - 1);
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    auto piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      coords.push_back(parse_rational(piece));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()) + " at position " + std::to_string(open + 1 + start) +
                                  " in '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return RationalVector(std::move(coords));
}

NonOrthogonalRoots::NonOrthogonalRoots(std::size_t first, std::size_t second)
    : std::invalid_argument("non-orthogonal roots (" + std::to_string(first) + "," + std::to_string(second) + ")"),
      first_(first),
      second_(second) {}

OrthogonalSubsystem OrthogonalSubsystem::with_kappas(std::vector<Rational> kappas) const {
  return validate_subsystem(roots_, std::move(kappas), dim_);
}

OrthogonalSubsystem validate_subsystem(std::vector<RationalVector> roots, std::vector<Rational> kappas,
                                       std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("subsystem dimension must be >= 1");
  if (roots.size() != kappas.size()) {
    throw std::invalid_argument("count mismatch: " + std::to_string(roots.size()) + " roots but " +
                                std::to_string(kappas.size()) + " multiplicities");
  }
  if (roots.size() > dim) throw std::invalid_argument("more roots than the dimension allows");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].dim() != dim) {
      throw std::invalid_argument("root " + std::to_string(i + 1) + " has dimension " +
                                  std::to_string(roots[i].dim()) + ", expected " + std::to_string(dim));
    }
    if (roots[i].is_zero()) throw std::invalid_argument("zero root at index " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (dot(roots[i], roots[j]) != 0) throw NonOrthogonalRoots(i + 1, j + 1);
    }
  }
  return OrthogonalSubsystem(dim, std::move(roots), std::move(kappas));
}

OrthogonalSubsystem build_subsystem_A(std::size_t N, std::vector<Rational> kappas) {
  if (N < 2) throw std::invalid_argument("A-type subsystem needs N >= 2");
  if (kappas.size() != N / 2) {
    throw std::invalid_argument("A-type subsystem needs " + std::to_string(N / 2) + " multiplicities, got " +
                                std::to_string(kappas.size()));
  }
  std::vector<RationalVector> roots;
  for (std::size_t i = 0; i < N / 2; ++i) {
    roots.push_back(RationalVector::unit(N, 2 * i) - RationalVector::unit(N, 2 * i + 1));
  }
  return validate_subsystem(std::move(roots), std::move(kappas), N);
}

OrthogonalSubsystem build_subsystem_B(std::size_t N, std::vector<Rational> kappas_plus,
                                      std::vector<Rational> kappas_minus) {
  if (N < 2) throw std::invalid_argument("B-type subsystem needs N >= 2");
  if (kappas_plus.size() != N / 2 || kappas_minus.size() != N / 2) {
    throw std::invalid_argument("B-type subsystem needs " + std::to_string(N / 2) +
                                " multiplicities for each of the +/- families");
  }
  std::vector<RationalVector> roots;
  std::vector<Rational> kappas;
  for (std::size_t i = 0; i < N / 2; ++i) {
    auto a = RationalVector::unit(N, 2 * i);
    auto b = RationalVector::unit(N, 2 * i + 1);
    roots.push_back(a + b);
    kappas.push_back(kappas_plus[i]);
    roots.push_back(a - b);
    kappas.push_back(kappas_minus[i]);
  }
  return validate_subsystem(std::move(roots), std::move(kappas), N);
}

OrthogonalSubsystem build_subsystem_direct(std::size_t N, std::vector<Rational> kappas) {
  if (N < 1) throw std::invalid_argument("direct-product subsystem needs N >= 1");
  if (kappas.size() != N) throw std::invalid_argument("direct-product subsystem needs one multiplicity per axis");
  std::vector<RationalVector> roots;
  for (std::size_t j = 0; j < N; ++j) roots.push_back(RationalVector::unit(N, j));
  return validate_subsystem(std::move(roots), std::move(kappas), N);
}

XiDecomposition decompose_xi(const RationalVector& xi, const OrthogonalSubsystem& subsystem) {
  if (xi.dim() != subsystem.dim()) throw std::invalid_argument("decompose_xi: dimension mismatch");
  XiDecomposition out{{}, xi};
  for (const auto& alpha : subsystem.roots()) {
    Rational c = dot(xi, alpha) / norm2(alpha);
    out.residual -= c * alpha;
    out.coefficients.push_back(c);
  }
  return out;
}

nlohmann::json to_json(const RationalVector& v) {
  auto arr = nlohmann::json::array();
  for (const auto& c : v.coords()) arr.push_back(to_string(c));
  return arr;
}

nlohmann::json to_json(const OrthogonalSubsystem& subsystem) {
  nlohmann::json j;
  j["dim"] = subsystem.dim();
  j["roots"] = nlohmann::json::array();
  for (const auto& r : subsystem.roots()) j["roots"].push_back(to_json(r));
  j["kappas"] = nlohmann::json::array();
  for (const auto& k : subsystem.kappas()) j["kappas"].push_back(to_string(k));
  return j;
}

namespace {

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  throw std::invalid_argument("expected a rational as a string or integer, got " + v.dump());
}

}  // namespace

OrthogonalSubsystem subsystem_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("roots") || !j.contains("kappas")) {
    throw std::invalid_argument("subsystem JSON needs dim, roots and kappas");
  }
  auto dim = j.at("dim").get<std::size_t>();
  std::vector<RationalVector> roots;
  for (const auto& r : j.at("roots")) {
    std::vector<Rational> c;
    for (const auto& v : r) c.push_back(rational_from_json(v));
    roots.emplace_back(std::move(c));
  }
  std::vector<Rational> kappas;
  for (const auto& k : j.at("kappas")) kappas.push_back(rational_from_json(k));
  return validate_subsystem(std::move(roots), std::move(kappas), dim);
}

}  // namespace projdunkl
