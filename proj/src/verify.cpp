#include "projdunkl/verify.hpp"

#include "projdunkl/catalog.hpp"
#include "projdunkl/gamma_ratio.hpp"
#include "projdunkl/intertwine.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/opengine.hpp"
#include "projdunkl/rootgeom.hpp"
#include "projdunkl/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace projdunkl {

using json = nlohmann::json;

std::vector<std::string> all_suites() {
  return {"geometry", "commutativity", "intertwining", "inverse",
          "kummer",   "laplacian",     "multivar_eigen", "transform"};
}

Fault designated_fault(const std::string& suite) {
  if (suite == "geometry" || suite == "multivar_eigen") return Fault::PerturbRoot;
  if (suite == "intertwining" || suite == "laplacian") return Fault::DropProjection;
  if (suite == "commutativity" || suite == "inverse" || suite == "kummer" || suite == "transform")
    return Fault::PerturbKappa;
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

// ---- rng

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

static std::uint64_t stream_seed(std::uint64_t seed, const std::string& stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return seed ^ h;
}

SuiteRng::SuiteRng(std::uint64_t seed, const std::string& stream) : gen_(stream_seed(seed, stream)) {}

std::uint64_t SuiteRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SuiteRng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t r = gen_();
    if (r < limit) return r % n;
  }
}

long SuiteRng::range(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

double SuiteRng::uniform(double lo, double hi) {
  double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Rational SuiteRng::rational(const Rational& lo, const Rational& hi, long max_den) {
  long q = range(1, max_den);
  Rational a = lo * q, b = hi * q;
  long pmin = ceil_to_long(a);
  long pmax = -ceil_to_long(Rational(-b));
  if (pmin > pmax) return lo;
  Rational r(range(pmin, pmax), q);
  r.canonicalize();
  return r;
}

// ---- config

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"eigen_residual", 1e-12},   {"ode_residual", 1e-10},  {"series_integral", 1e-11},
      {"inverse_numeric", 1e-8},   {"multivar_residual", 1e-10}, {"multivar_literal", 1e-12},
      {"bound_slack", 1e-9},       {"factorization", 1e-7},  {"chi_numeric", 1e-11},
      {"duality", 1e-8},           {"numeric_T", 1e-9},      {"gaussian_integral", 1e-8},
      {"indicator_zero", 1e-10},   {"decay_factor", 0.05},
  };
  return t;
}

double SuiteConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

void SuiteConfig::validate() const {
  if (max_dimension < 1 || max_dimension > 8)
    throw std::invalid_argument("max_dimension must be in [1, 8], got " + std::to_string(max_dimension));
  if (max_degree < 0 || max_degree > 10)
    throw std::invalid_argument("max_degree must be in [0, 10], got " + std::to_string(max_degree));
  if (suites.empty()) throw std::invalid_argument("suites: empty selection");
  auto known = all_suites();
  for (const auto& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("suites: unknown suite '" + s + "'");
  if (kappa_set.empty()) throw std::invalid_argument("kappa_set: empty");
  for (const auto& k : kappa_set)
    if (k <= 0 || k > 8) throw std::invalid_argument("kappa_set: value " + to_string(k) + " outside (0, 8]");
  if (commutator_tuples < 1) throw std::invalid_argument("commutator_tuples must be positive");
  for (const auto& [k, v] : tolerances) {
    if (!default_tolerances().contains(k)) throw std::invalid_argument("tolerances: unknown key '" + k + "'");
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("tolerances: '" + k + "' must be positive");
  }
}

static json rationals_json(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json SuiteConfig::to_json() const {
  json t = json::object();
  for (const auto& [k, v] : default_tolerances()) t[k] = tolerance(k);
  return {{"suites", suites},
          {"seed", seed},
          {"max_dimension", max_dimension},
          {"max_degree", max_degree},
          {"kappa_set", rationals_json(kappa_set)},
          {"tolerances", t},
          {"commutator_tuples", commutator_tuples},
          {"fault", to_string(fault)},
          {"quick", quick}};
}

// ---- report

json CheckRecord::to_json(bool with_timing) const {
  json j{{"suite", suite}, {"check", check}, {"status", passed ? "pass" : "fail"},
         {"inputs", inputs}, {"digest", digest}};
  if (!passed) j["witness"] = witness;
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.passed; });
}

std::vector<std::string> VerificationReport::failed_suites() const {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (!r.passed && std::find(out.begin(), out.end(), r.suite) == out.end()) out.push_back(r.suite);
  return out;
}

std::string VerificationReport::jsonl(bool with_timing) const {
  std::string s;
  for (const auto& r : records) {
    s += r.to_json(with_timing).dump();
    s += '\n';
  }
  return s;
}

json VerificationReport::summary() const {
  json per = json::object();
  for (const auto& r : records) {
    auto& e = per[r.suite];
    if (e.is_null()) e = {{"pass", 0}, {"fail", 0}};
    e[r.passed ? "pass" : "fail"] = e[r.passed ? "pass" : "fail"].get<int>() + 1;
  }
  return {{"tool", "projdunkl"},
          {"version", kToolVersion},
          {"config", config},
          {"checks", records.size()},
          {"passed", records.size() - failures()},
          {"failed", failures()},
          {"suites", per},
          {"status", all_passed() ? "pass" : "fail"}};
}

void write_report(const VerificationReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "'");
  out << report.jsonl();
  std::ofstream sum(path + ".summary.json", std::ios::binary);
  if (!sum) throw std::runtime_error("cannot open summary file '" + path + ".summary.json'");
  sum << report.summary().dump(2) << '\n';
}

// ---- suite plumbing

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
  const SuiteConfig& cfg;
  std::string suite;
  SuiteRng rng;
  Fault fault;  // active only when it is this suite's designated fault
  std::vector<CheckRecord>& out;

  Ctx(const SuiteConfig& c, std::string s, std::vector<CheckRecord>& o)
      : cfg(c), suite(s), rng(c.seed, s), fault(c.fault == designated_fault(s) ? c.fault : Fault::None), out(o) {}

  int poly_degree() const { return std::min(6, cfg.max_degree); }
  int dim_cap(int limit) const { return std::min(limit, cfg.max_dimension); }

  // body returns a witness on failure
  void check(const std::string& name, json inputs, const std::function<std::optional<json>()>& body) {
    if (fault != Fault::None) inputs["fault"] = to_string(fault);
    CheckRecord r;
    r.suite = suite;
    r.check = name;
    r.digest = fnv1a_hex(inputs.dump());
    auto t0 = Clock::now();
    try {
      if (auto w = body()) {
        r.passed = false;
        r.witness = std::move(*w);
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.witness = {{"error", e.what()}};
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (!r.passed && !r.witness.contains("inputs")) r.witness["inputs"] = inputs;
    r.inputs = std::move(inputs);
    out.push_back(std::move(r));
  }
};

std::string cstr(Complex z) {
  std::ostringstream s;
  s.precision(17);
  s << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return s.str();
}

json doubles_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

RationalVector random_vector(SuiteRng& rng, std::size_t n, long lo, long hi, long den) {
  for (;;) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(rng.rational(Rational(lo), Rational(hi), den));
    RationalVector v(std::move(c));
    if (!v.is_zero()) return v;
  }
}

struct RandomSubsystem {
  std::string family;
  std::size_t N;
  OrthogonalSubsystem sub;
};

// family A or B, kappas either from `set` or uniform rationals in [0,4]
RandomSubsystem random_subsystem(SuiteRng& rng, const std::string& family, std::size_t N,
                                 const std::vector<Rational>* set) {
  auto kappa = [&] { return set ? rng.pick(*set) : rng.rational(Rational(0), Rational(4), 4); };
  std::size_t m = N / 2;
  if (family == "A") {
    std::vector<Rational> k;
    for (std::size_t i = 0; i < m; ++i) k.push_back(kappa());
    return {family, N, build_subsystem_A(N, k)};
  }
  if (family == "B") {
    std::vector<Rational> kp, km;
    for (std::size_t i = 0; i < m; ++i) {
      kp.push_back(kappa());
      km.push_back(kappa());
    }
    return {family, N, build_subsystem_B(N, kp, km)};
  }
  std::vector<Rational> k;
  for (std::size_t i = 0; i < N; ++i) k.push_back(kappa());
  return {family, N, build_subsystem_direct(N, k)};
}

json sweep_witness(const SweepOutcome& o) {
  json w = json::object();
  if (o.monomial) w["monomial"] = to_string(*o.monomial);
  if (o.witness) w["difference"] = to_string(*o.witness);
  w["monomials_checked"] = o.monomials_checked;
  return w;
}

// ---- geometry

void suite_geometry(Ctx& c) {
  const int samples = c.cfg.quick ? 10 : 40;
  const std::size_t nmax = static_cast<std::size_t>(c.dim_cap(8));

  struct Sample {
    RationalVector alpha, beta, x;
    std::size_t N;
  };
  std::vector<Sample> pts;
  for (int s = 0; s < samples; ++s) {
    std::size_t N = static_cast<std::size_t>(c.rng.range(nmax >= 2 ? 2 : 1, static_cast<long>(nmax)));
    RationalVector a = random_vector(c.rng, N, -3, 3, 3);
    RationalVector b = random_vector(c.rng, N, -3, 3, 3);
    // b made orthogonal to a; if it collapses use a fresh coordinate direction
    RationalVector bo = project(a, b);
    if (bo.is_zero()) bo = project(a, RationalVector::unit(N, 0));
    if (bo.is_zero() && N > 1) bo = project(a, RationalVector::unit(N, 1));
    pts.push_back({a, bo, random_vector(c.rng, N, -4, 4, 5), N});
  }

  auto inputs = [&](const char* prop) { return json{{"property", prop}, {"samples", samples}, {"max_dimension", nmax}}; };
  auto sample_json = [](const Sample& s) {
    return json{{"alpha", to_string(s.alpha)}, {"beta", to_string(s.beta)}, {"x", to_string(s.x)}};
  };

  c.check("projection_idempotent", inputs("tau(tau x) = tau x, <tau x, alpha> = 0"), [&]() -> std::optional<json> {
    for (const auto& s : pts) {
      auto t = project(s.alpha, s.x);
      if (!(project(s.alpha, t) == t) || dot(t, s.alpha) != 0) return sample_json(s);
    }
    return std::nullopt;
  });
  c.check("reflection_involution", inputs("s(s x) = x, |s x| = |x|"), [&]() -> std::optional<json> {
    for (const auto& s : pts) {
      auto r = reflect(s.alpha, s.x);
      if (!(reflect(s.alpha, r) == s.x) || norm2(r) != norm2(s.x)) return sample_json(s);
    }
    return std::nullopt;
  });
  c.check("projection_half_sum", inputs("tau = (1 + s)/2"), [&]() -> std::optional<json> {
    for (const auto& s : pts)
      if (!(Rational(2) * project(s.alpha, s.x) == s.x + reflect(s.alpha, s.x))) return sample_json(s);
    return std::nullopt;
  });
  // the root pair is what the fault perturbs: beta tilted toward alpha
  c.check("orthogonal_projections_commute", inputs("tau_a tau_b = tau_b tau_a for <a,b> = 0"),
          [&]() -> std::optional<json> {
            for (const auto& s : pts) {
              if (s.beta.is_zero()) continue;
              RationalVector b = s.beta;
              if (c.fault == Fault::PerturbRoot) b += Rational(1, 3) * s.alpha;
              auto ab = project(s.alpha, project(b, s.x));
              auto ba = project(b, project(s.alpha, s.x));
              if (!(ab == ba)) {
                json w = sample_json(s);
                w["beta_used"] = to_string(b);
                w["tau_a_tau_b_x"] = to_string(ab);
                w["tau_b_tau_a_x"] = to_string(ba);
                return w;
              }
            }
            return std::nullopt;
          });
  c.check("permutation_conjugation", inputs("u tau_a u^-1 = tau_{u a} for permutation matrices u"),
          [&]() -> std::optional<json> {
            for (const auto& s : pts) {
              std::vector<std::size_t> perm(s.N);
              for (std::size_t i = 0; i < s.N; ++i) perm[i] = i;
              for (std::size_t i = s.N; i > 1; --i) std::swap(perm[i - 1], perm[c.rng.below(i)]);
              auto apply = [&](const RationalVector& v, bool inverse) {
                RationalVector w = RationalVector::zero(s.N);
                for (std::size_t i = 0; i < s.N; ++i) {
                  if (inverse) w[i] = v[perm[i]];
                  else w[perm[i]] = v[i];
                }
                return w;
              };
              auto lhs = apply(project(s.alpha, apply(s.x, true)), false);
              auto rhs = project(apply(s.alpha, false), s.x);
              if (!(lhs == rhs)) return sample_json(s);
            }
            return std::nullopt;
          });
  c.check("xi_decomposition", inputs("xi = sum c_i alpha_i + xi_hat, xi_hat orthogonal to roots"),
          [&]() -> std::optional<json> {
            for (const auto& fam : {"A", "B", "D"}) {
              for (std::size_t N = 2; N <= std::max<std::size_t>(2, std::min<std::size_t>(nmax, 6)); ++N) {
                auto rs = random_subsystem(c.rng, fam, N, nullptr);
                auto xi = random_vector(c.rng, N, -3, 3, 4);
                auto d = decompose_xi(xi, rs.sub);
                RationalVector sum = d.residual;
                for (std::size_t i = 0; i < rs.sub.size(); ++i) {
                  sum += d.coefficients[i] * rs.sub.root(i);
                  if (dot(d.residual, rs.sub.root(i)) != 0) return json{{"family", fam}, {"xi", to_string(xi)}};
                }
                if (!(sum == xi)) return json{{"family", fam}, {"xi", to_string(xi)}};
              }
            }
            return std::nullopt;
          });
  c.check("non_orthogonal_rejected", inputs("validate_subsystem throws on <a,b> != 0"), [&]() -> std::optional<json> {
    for (const auto& s : pts) {
      if (s.N < 2) continue;
      RationalVector b = s.beta + s.alpha;  // <a, b> = |a|^2 != 0
      try {
        validate_subsystem({s.alpha, b}, {Rational(1), Rational(1)}, s.N);
        return json{{"alpha", to_string(s.alpha)}, {"beta", to_string(b)}, {"error", "accepted"}};
      } catch (const NonOrthogonalRoots& e) {
        if (e.first() != 1 || e.second() != 2) return json{{"error", "wrong indices"}};
      }
    }
    return std::nullopt;
  });
}

// ---- commutativity

void suite_commutativity(Ctx& c) {
  const int tuples = c.cfg.quick ? std::min(20, c.cfg.commutator_tuples) : c.cfg.commutator_tuples;
  const int degree = c.cfg.quick ? std::min(4, c.poly_degree()) : c.poly_degree();
  const long nmax = std::max(2, c.dim_cap(c.cfg.quick ? 4 : 6));

  std::vector<CommutatorCase> cases;
  std::vector<json> inputs;
  std::vector<RandomSubsystem> subs;
  for (int t = 0; t < tuples; ++t) {
    std::string fam = c.rng.below(2) ? "B" : "A";
    std::size_t N = static_cast<std::size_t>(c.rng.range(2, nmax));
    auto rs = random_subsystem(c.rng, fam, N, nullptr);
    auto xi = random_vector(c.rng, N, -2, 2, 3);
    auto eta = random_vector(c.rng, N, -2, 2, 3);
    std::vector<RationalVector> roots(rs.sub.roots().begin(), rs.sub.roots().end());
    std::vector<Rational> kx(rs.sub.kappas().begin(), rs.sub.kappas().end());
    auto ke = kx;
    if (c.fault == Fault::PerturbKappa) ke[0] += Rational(1, 2);
    CommutatorCase cc{roots, kx, ke, xi, eta, degree};
    json in{{"family", fam}, {"N", N}, {"subsystem", to_json(rs.sub)}, {"xi", to_string(xi)},
            {"eta", to_string(eta)}, {"max_degree", degree}};
    if (c.fault == Fault::PerturbKappa) in["kappas_eta"] = rationals_json(cc.kappas_eta);
    cases.push_back(std::move(cc));
    inputs.push_back(std::move(in));
    subs.push_back(std::move(rs));
  }

  auto outcomes = commutator_sweep(cases, c.cfg.execution);
  for (std::size_t t = 0; t < cases.size(); ++t) {
    c.check("commutator_zero", inputs[t], [&]() -> std::optional<json> {
      if (outcomes[t].passed()) return std::nullopt;
      return sweep_witness(outcomes[t]);
    });
  }

  // secondary agreement checks on the first tuples
  const std::size_t extra = std::min<std::size_t>(cases.size(), c.cfg.quick ? 4 : 20);
  const int d2 = std::min(degree, 4);
  c.check("decomposition_and_coordinate_forms", {{"tuples", extra}, {"max_degree", d2}}, [&]() -> std::optional<json> {
    for (std::size_t t = 0; t < extra; ++t) {
      const auto& rs = subs[t];
      ProjectionDunklOperator op(rs.sub, cases[t].xi);
      for (const auto& e : monomials_up_to_degree(rs.N, d2)) {
        MPoly m = MPoly::monomial(rs.N, e);
        MPoly ref = apply_T_poly(op, m);
        std::optional<MPoly> coord;
        if (rs.family == "A") {
          coord = apply_T_A_coordinates(rs.N, rs.sub.kappas(), cases[t].xi, m);
        } else {
          std::vector<Rational> kp, km;
          for (std::size_t i = 0; i < rs.sub.size(); i += 2) {
            kp.push_back(rs.sub.kappa(i));
            km.push_back(rs.sub.kappa(i + 1));
          }
          coord = apply_T_B_coordinates(rs.N, kp, km, cases[t].xi, m);
        }
        bool dec_ok = apply_T_decomposed(op, m) == ref;
        if (!dec_ok || !(*coord == ref))
          return json{{"tuple", inputs[t]}, {"monomial", to_string(m)}, {"reference", to_string(ref)},
                      {"form", dec_ok ? "coordinate" : "decomposed"}};
      }
    }
    return std::nullopt;
  });

  const double tol = c.cfg.tolerance("numeric_T");
  c.check("numeric_matches_exact", {{"tuples", extra}, {"max_degree", d2}, {"tolerance", tol}},
          [&]() -> std::optional<json> {
            for (std::size_t t = 0; t < extra; ++t) {
              const auto& rs = subs[t];
              ProjectionDunklOperator op(rs.sub, cases[t].xi);
              MPoly p(rs.N);
              for (const auto& e : monomials_up_to_degree(rs.N, d2))
                p += MPoly::monomial(rs.N, e, c.rng.rational(Rational(-2), Rational(2), 3));
              auto f = polynomial_function(p);
              MPoly Tp = apply_T_poly(op, p);
              for (int s = 0; s < 3; ++s) {
                std::vector<double> x(rs.N);
                for (auto& v : x) v = c.rng.uniform(-1.5, 1.5);
                Complex num = apply_T_numeric(op, f, x);
                Complex ex = poly_eval_numeric(Tp, x);
                double scale = std::max({1.0, std::abs(ex), std::abs(f.value(x))});
                if (std::abs(num - ex) > tol * scale)
                  return json{{"tuple", inputs[t]}, {"poly", to_string(p)}, {"x", doubles_json(x)},
                              {"numeric", cstr(num)}, {"exact", cstr(ex)}};
              }
            }
            return std::nullopt;
          });
}

// ---- intertwining

void suite_intertwining(Ctx& c) {
  const int degree = c.cfg.quick ? std::min(4, c.cfg.max_degree) : c.cfg.max_degree;
  const std::size_t nmax = static_cast<std::size_t>(c.dim_cap(c.cfg.quick ? 4 : 6));

  std::vector<IntertwiningCase> cases;
  std::vector<json> inputs;
  auto add = [&](const std::string& fam, std::size_t N) {
    auto rs = random_subsystem(c.rng, fam, N, &c.cfg.kappa_set);
    auto xi = random_vector(c.rng, N, -2, 2, 2);
    cases.push_back({rs.sub, xi, degree, c.fault == Fault::DropProjection ? Fault::DropProjection : Fault::None});
    inputs.push_back({{"family", fam}, {"N", N}, {"subsystem", to_json(rs.sub)}, {"xi", to_string(xi)},
                      {"max_degree", degree}});
  };
  for (std::size_t N = 1; N <= std::min<std::size_t>(nmax, 3); ++N) add("D", N);
  for (std::size_t N = 2; N <= nmax; ++N) add("A", N);
  for (std::size_t N = 2; N <= nmax; ++N) add("B", N);

  // cases run one at a time, each internally parallel over monomials
  for (std::size_t t = 0; t < cases.size(); ++t) {
    c.check("intertwining_identity", inputs[t], [&]() -> std::optional<json> {
      auto o = intertwining_case(cases[t], c.cfg.execution);
      if (o.passed()) return std::nullopt;
      return sweep_witness(o);
    });
  }

  if (c.cfg.quick) return;

  const int dsub = std::min(degree, 4);
  c.check("chi_two_paths_agree", {{"max_degree", dsub}, {"cases", std::min<std::size_t>(cases.size(), 4)}},
          [&]() -> std::optional<json> {
            for (std::size_t t = 0; t < std::min<std::size_t>(cases.size(), 4); ++t) {
              const auto& s = cases[t].subsystem;
              for (const auto& e : monomials_up_to_degree(s.dim(), dsub)) {
                MPoly m = MPoly::monomial(s.dim(), e);
                auto a = chi_poly_scaled(m, s).poly;
                auto b = chi_tilde_by_substitution(m, s);
                if (!(a == b))
                  return json{{"case", inputs[t]}, {"monomial", to_string(m)}, {"taylor", to_string(a)},
                              {"substitution", to_string(b)}};
              }
            }
            return std::nullopt;
          });

  const double tol = c.cfg.tolerance("chi_numeric");
  c.check("chi_quadrature_matches_exact", {{"max_degree", dsub}, {"tolerance", tol}}, [&]() -> std::optional<json> {
    for (std::size_t t = 0; t < std::min<std::size_t>(cases.size(), 5); ++t) {
      const auto& s = cases[t].subsystem;
      MPoly p(s.dim());
      for (const auto& e : monomials_up_to_degree(s.dim(), dsub))
        p += MPoly::monomial(s.dim(), e, c.rng.rational(Rational(-2), Rational(2), 2));
      auto sc = chi_poly_scaled(p, s);
      auto f = polynomial_function(p);
      double scale = sc.scale.to_double();
      for (int k = 0; k < 3; ++k) {
        std::vector<double> x(s.dim());
        for (auto& v : x) v = c.rng.uniform(-1.5, 1.5);
        Complex q = chi_numeric(f, s, x, 24);
        Complex ex = scale * poly_eval_numeric(sc.poly, x);
        if (std::abs(q - ex) > tol * std::max(1.0, std::abs(ex)))
          return json{{"case", inputs[t]}, {"poly", to_string(p)}, {"x", doubles_json(x)},
                      {"quadrature", cstr(q)}, {"exact", cstr(ex)}};
      }
    }
    return std::nullopt;
  });

  const double dtol = c.cfg.tolerance("duality");
  c.check("duality_pairing", {{"function", "bump"}, {"tolerance", dtol}}, [&]() -> std::optional<json> {
    auto g = catalog_function("bump");
    for (const auto& k : c.cfg.kappa_set) {
      for (int m = 0; m <= std::min(3, c.cfg.max_degree); ++m) {
        Exponent e;
        e.e[0] = static_cast<std::uint8_t>(m);
        MPoly f = MPoly::monomial(1, e);
        auto d = duality_pairing(f, g, k);
        if (d.discrepancy() > dtol)
          return json{{"kappa", to_string(k)}, {"f", to_string(f)}, {"chi_side", cstr(d.chi_side)},
                      {"dual_side", cstr(d.dual_side)}};
      }
    }
    return std::nullopt;
  });
}

// ---- inverse

void suite_inverse(Ctx& c) {
  std::set<Rational> ks{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)};
  ks.insert(c.cfg.kappa_set.begin(), c.cfg.kappa_set.end());
  const int mmax = c.poly_degree();
  const Rational shift = c.fault == Fault::PerturbKappa ? Rational(1, 2) : Rational(0);

  for (const auto& k : ks) {
    c.check("left_inverse_exact", {{"kappa", to_string(k)}, {"max_degree", mmax}}, [&]() -> std::optional<json> {
      for (int m = 0; m <= mmax; ++m) {
        auto xm = GammaPoly::monomial(m);
        auto back = chi_inverse_one_var(chi_one_var(xm, k), k + shift);
        if (!(back == xm))
          return json{{"m", m}, {"kappa_inverse", to_string(k + shift)}, {"result", to_string(back)}};
      }
      return std::nullopt;
    });
  }

  const double tol = c.cfg.tolerance("inverse_numeric");
  auto g = catalog_function("exp");
  for (const auto& k : ks) {
    double kd = to_double(k), ki = to_double(k + shift);
    c.check("left_inverse_numeric", {{"kappa", to_string(k)}, {"function", "exp"}, {"interval", {-2, 2}},
                                     {"points", 41}, {"tolerance", tol}},
            [&]() -> std::optional<json> {
              auto h = chi_inverse_one_var_numeric(chi_one_var_numeric(g, kd), ki);
              for (int i = 0; i <= 40; ++i) {
                double x = -2 + 0.1 * i;
                Complex v = h(x), want = std::exp(x);
                if (std::abs(v - want) > tol * std::max(1.0, std::abs(want)))
                  return json{{"x", x}, {"value", cstr(v)}, {"expected", cstr(want)}};
              }
              return std::nullopt;
            });
  }
}

// ---- kummer

void suite_kummer(Ctx& c) {
  const double shift = c.fault == Fault::PerturbKappa ? 0.5 : 0.0;
  const std::vector<double> kappas{0.5, 1.0, 1.5}, lambdas{1, 3, 10}, xs{-2, -1, -0.5, 0.5, 1, 2};
  const double etol = c.cfg.tolerance("eigen_residual"), otol = c.cfg.tolerance("ode_residual");

  for (double k : kappas) {
    json in{{"kappa", k}, {"lambda", lambdas}, {"x", xs}, {"tolerance", etol}};
    c.check("eigen_residual", in, [&]() -> std::optional<json> {
      for (double l : lambdas) {
        auto f = eigen_rank_one_function(k + shift, Complex(l, 0));
        for (double x : xs) {
          Complex r = one_var_T(k, f, x) - Complex(0, l) * f(x);
          if (std::abs(r) >= etol) return json{{"lambda", l}, {"x", x}, {"residual", std::abs(r)}};
        }
      }
      return std::nullopt;
    });
    in["tolerance"] = otol;
    c.check("ode_residual", in, [&]() -> std::optional<json> {
      for (double l : lambdas) {
        auto f = eigen_rank_one_function(k + shift, Complex(l, 0));
        for (double x : xs) {
          Complex r = generalized_ode_residual(k, Complex(l, 0), f, x);
          if (std::abs(r) >= otol) return json{{"lambda", l}, {"x", x}, {"residual", std::abs(r)}};
        }
      }
      return std::nullopt;
    });
  }

  // 10 lambdas x 100 points per kappa
  std::vector<double> gl, gx;
  for (int i = 1; i <= 10; ++i) gl.push_back(0.5 * i * i);
  for (int i = 0; i < 100; ++i) gx.push_back(-10 + 20.0 * i / 99);
  for (double k : {0.5, 1.0, 2.0}) {
    c.check("bold_M_bounded_by_one", {{"kappa", k}, {"grid_points", gl.size() * gx.size()}},
            [&]() -> std::optional<json> {
              auto vals = kummer_grid({k}, gl, gx, c.cfg.execution);
              std::size_t worst = 0;
              for (std::size_t i = 1; i < vals.size(); ++i)
                if (std::abs(vals[i]) > std::abs(vals[worst])) worst = i;
              double mx = std::abs(vals[worst]);
              if (mx <= 1.0) return std::nullopt;
              return json{{"lambda", gl[worst / gx.size()]}, {"x", gx[worst % gx.size()]}, {"abs", mx}};
            });
  }

  const double stol = c.cfg.tolerance("series_integral");
  const std::vector<Complex> zs{{0, 0.5}, {0, 2}, {0, 7}, {0, 15}, {0, 25}, {0, 38}, {-5, 0}, {3, 4}};
  for (double k : {0.5, 1.0, 2.0}) {
    c.check("series_matches_integral", {{"a", 1}, {"b", k + 1}, {"tolerance", stol}}, [&]() -> std::optional<json> {
      KummerParams p{Complex(1, 0), Complex(k + 1, 0)};
      for (Complex z : zs) {
        Complex s = kummer_M_series(p, z), q = kummer_M_integral(1.0, k + 1, z);
        if (std::abs(s - q) > stol * std::abs(s))
          return json{{"z", cstr(z)}, {"series", cstr(s)}, {"integral", cstr(q)}};
      }
      return std::nullopt;
    });
  }

  c.check("derivative_bound", {{"n", {1, 2, 3}}, {"kappa", {0.5, 1.0, 2.0}}, {"y", "-20:20:0.5"}},
          [&]() -> std::optional<json> {
            for (double k : {0.5, 1.0, 2.0})
              for (int n = 0; n <= 3; ++n)
                for (int i = 0; i <= 80; ++i) {
                  Complex z(0, -20 + 0.5 * i);
                  double d = std::abs(bold_M_derivative(k, n, z));
                  double bound = std::pow(std::abs(z), n) * std::exp(z.real());
                  // n = 0 is the |M| <= 1 statement, covered above
                  if (n > 0 && d > bound * (1 + 1e-12) + 1e-300)
                    return json{{"kappa", k}, {"n", n}, {"z", cstr(z)}, {"abs_derivative", d}, {"bound", bound}};
                }
            return std::nullopt;
          });

  // the bound the integral form of the derivative actually gives
  c.check("derivative_bound_integral_form",
          {{"n", {0, 1, 2, 3}}, {"kappa", {0.5, 1.0, 2.0}}, {"y", "-20:20:0.5"}, {"x", {-3, 0, 2}}},
          [&]() -> std::optional<json> {
            for (double k : {0.5, 1.0, 2.0})
              for (int n = 0; n <= 3; ++n)
                for (double re : {-3.0, 0.0, 2.0})
                  for (int i = 0; i <= 80; ++i) {
                    Complex z(re, -20 + 0.5 * i);
                    double d = std::abs(bold_M_derivative(k, n, z));
                    double bound = std::tgamma(n + 1.0) / std::tgamma(k + n + 1) * std::exp(std::max(0.0, re));
                    if (d > bound * (1 + 1e-12))
                      return json{{"kappa", k}, {"n", n}, {"z", cstr(z)}, {"abs_derivative", d}, {"bound", bound}};
                  }
            return std::nullopt;
          });

  c.check("decay_at_x1", {{"kappa", 0.5}, {"lambda", {10, 100, 1000}}, {"threshold", 0.15}},
          [&]() -> std::optional<json> {
            double prev = std::numeric_limits<double>::infinity();
            json mags = json::array();
            bool ok = true;
            for (double l : {10.0, 100.0, 1000.0}) {
              double m = std::abs(bold_M(0.5, Complex(0, l)));
              mags.push_back(m);
              ok = ok && m < prev;
              prev = m;
            }
            if (ok && prev < 0.15) return std::nullopt;
            return json{{"magnitudes", mags}};
          });

  c.check("M_kappa0_is_exp", {{"z", {"1", "-2", "3i", "1+1i"}}}, [&]() -> std::optional<json> {
    for (Complex z : {Complex(1, 0), Complex(-2, 0), Complex(0, 3), Complex(1, 1)}) {
      Complex m = bold_M(0.0, z), e = std::exp(z);
      if (std::abs(m - e) > 4e-16 * std::abs(e) + 1e-300) return json{{"z", cstr(z)}, {"value", cstr(m)}};
    }
    return std::nullopt;
  });

  const double ctol = c.cfg.tolerance("chi_numeric");
  c.check("chi_of_exponential_is_bold_M", {{"kappa", kappas}, {"lambda", lambdas}, {"tolerance", ctol}},
          [&]() -> std::optional<json> {
            for (double k : kappas) {
              auto s = build_subsystem_direct(1, {Rational(static_cast<long>(std::lround(2 * k)), 2)});
              if (shift != 0) s = s.with_kappas({s.kappa(0) + Rational(1, 2)});
              for (double l : lambdas) {
                auto f = exponential_function({Complex(0, l)});
                for (double x : xs) {
                  std::vector<double> xv{x};
                  Complex q = chi_numeric(f, s, xv, 48), m = bold_M(k, Complex(0, l * x));
                  if (std::abs(q - m) > ctol)
                    return json{{"kappa", k}, {"lambda", l}, {"x", x}, {"chi", cstr(q)}, {"bold_M", cstr(m)}};
                }
              }
            }
            return std::nullopt;
          });
}

// ---- laplacian

void suite_laplacian(Ctx& c) {
  const int degree = c.poly_degree();
  const std::size_t nmax = static_cast<std::size_t>(c.dim_cap(c.cfg.quick ? 2 : 4));
  const std::vector<Rational> vals{Rational(0), Rational(1, 2), Rational(1)};

  for (std::size_t N = 1; N <= nmax; ++N) {
    std::vector<std::vector<Rational>> combos;
    if (N <= 2) {
      std::size_t total = N == 1 ? 3 : 9;
      for (std::size_t i = 0; i < total; ++i) {
        std::vector<Rational> k{vals[i % 3]};
        if (N == 2) k.push_back(vals[i / 3]);
        combos.push_back(k);
      }
    } else {
      for (int i = 0; i < 9; ++i) {
        std::vector<Rational> k;
        for (std::size_t j = 0; j < N; ++j) k.push_back(c.rng.pick(vals));
        combos.push_back(k);
      }
    }
    for (const auto& k : combos) {
      c.check("laplacian_expanded_form", {{"N", N}, {"kappas", rationals_json(k)}, {"max_degree", degree}},
              [&]() -> std::optional<json> {
                auto monos = monomials_up_to_degree(N, degree);
                std::vector<char> ok(monos.size(), 1);
                for_each_index(monos.size(), c.cfg.execution, [&](std::size_t i) {
                  ok[i] = laplacian_direct(k, MPoly::monomial(N, monos[i]), c.fault).consistent();
                });
                for (std::size_t i = 0; i < monos.size(); ++i) {
                  if (ok[i]) continue;
                  MPoly m = MPoly::monomial(N, monos[i]);
                  auto r = laplacian_direct(k, m, c.fault);
                  return json{{"monomial", to_string(m)}, {"double_application", to_string(r.double_application)},
                              {"expanded", r.expanded ? to_string(*r.expanded) : "not a polynomial"}};
                }
                return std::nullopt;
              });
    }
  }
}

// ---- multivariate eigenfunctions

void suite_multivar(Ctx& c) {
  const double rtol = c.cfg.tolerance("multivar_residual"), ltol = c.cfg.tolerance("multivar_literal");
  const int points = 20;
  for (auto fam : {EigenFamily::DirectProduct, EigenFamily::AType, EigenFamily::BType}) {
    for (std::size_t N = 2; N <= static_cast<std::size_t>(c.dim_cap(5)); ++N) {
      MultivarEigenfunction ef;
      ef.family = fam;
      ef.dim = N;
      std::size_t nk = fam == EigenFamily::DirectProduct ? N : fam == EigenFamily::AType ? N / 2 : 2 * (N / 2);
      json kj = json::array();
      for (std::size_t i = 0; i < nk; ++i) {
        auto k = c.rng.pick(c.cfg.kappa_set);
        ef.kappas.push_back(to_double(k));
        kj.push_back(to_string(k));
      }
      std::vector<double> lam(N);
      for (auto& l : lam) l = c.rng.uniform(-2, 2);
      for (double l : lam) ef.lambda.emplace_back(l, 0);
      std::vector<std::vector<double>> xs(points), xis(points);
      for (int p = 0; p < points; ++p) {
        xs[p].resize(N);
        xis[p].resize(N);
        for (auto& v : xs[p]) v = c.rng.uniform(-2, 2);
        for (auto& v : xis[p]) v = c.rng.uniform(-1, 1);
      }
      json in{{"family", to_string(fam)}, {"N", N}, {"kappas", kj}, {"lambda", lam}, {"points", points}};

      in["tolerance"] = rtol;
      c.check("eigen_residual", in, [&]() -> std::optional<json> {
        ef.validate();
        auto exact = numeric_subsystem(ef);
        auto used = numeric_subsystem(ef, c.fault);
        auto f = eigen_test_function(exact, ef.lambda);
        for (int p = 0; p < points; ++p) {
          Complex T = apply_T_numeric_raw(f, xs[p], xis[p], used.roots, used.kappas);
          Complex dot_l = 0;
          for (std::size_t i = 0; i < N; ++i) dot_l += ef.lambda[i] * xis[p][i];
          Complex r = T - Complex(0, 1) * dot_l * f.value(xs[p]);
          if (std::abs(r) >= rtol)
            return json{{"x", doubles_json(xs[p])}, {"xi", doubles_json(xis[p])}, {"residual", std::abs(r)}};
        }
        return std::nullopt;
      });

      in["tolerance"] = ltol;
      c.check("literal_matches_general", in, [&]() -> std::optional<json> {
        auto s = numeric_subsystem(ef);
        for (int p = 0; p < points; ++p) {
          Complex a = eigen_multivar(ef, xs[p]), b = eigen_general(s, ef.lambda, xs[p]);
          if (std::abs(a - b) > ltol * std::max(1.0, std::abs(b)))
            return json{{"x", doubles_json(xs[p])}, {"literal", cstr(a)}, {"general", cstr(b)}};
        }
        return std::nullopt;
      });

      in.erase("tolerance");
      c.check("value_at_origin_is_one", in, [&]() -> std::optional<json> {
        std::vector<double> zero(N, 0.0);
        Complex v = eigen_multivar(ef, zero);
        if (std::abs(v - 1.0) > 4 * std::numeric_limits<double>::epsilon()) return json{{"value", cstr(v)}};
        return std::nullopt;
      });
    }
  }
}

// ---- transform

std::vector<double> lambda_range(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0; lo + i * step <= hi + 1e-12; ++i) v.push_back(lo + i * step);
  return v;
}

void suite_transform(Ctx& c) {
  const double slack = c.cfg.tolerance("bound_slack"), ftol = c.cfg.tolerance("factorization");

  if (!c.cfg.quick) {
    for (const auto& name : catalog_names()) {
      auto f = catalog_function(name);
      if (!f.compact()) continue;  // exp is not integrable
      for (double k : {0.0, 0.5, 1.0, 2.0}) {
        c.check("sup_bound", {{"function", name}, {"kappa", k}, {"lambda", "0:20:0.5"}, {"slack", slack}},
                [&]() -> std::optional<json> {
                  TransformRequest req{k, f, lambda_range(0, 20, 0.5)};
                  auto vals = transform_grid(req, c.cfg.execution);
                  double l1 = l1_norm(f);
                  std::size_t worst = 0;
                  for (std::size_t i = 1; i < vals.size(); ++i)
                    if (std::abs(vals[i]) > std::abs(vals[worst])) worst = i;
                  if (std::abs(vals[worst]) <= l1 + slack) return std::nullopt;
                  return json{{"lambda", req.lambda_grid[worst]}, {"abs", std::abs(vals[worst])}, {"l1", l1}};
                });
      }
    }
  }

  const auto names = c.cfg.quick ? std::vector<std::string>{"bump"} : smooth_compact_names();
  const std::vector<double> fk = c.cfg.quick ? std::vector<double>{0.5} : std::vector<double>{0.5, 1.0, 1.5, 2.0};
  for (const auto& name : names) {
    for (double k : fk) {
      c.check("factorization", {{"function", name}, {"kappa", k}, {"lambda", "0:5:0.5"}, {"tolerance", ftol}},
              [&]() -> std::optional<json> {
                TransformRequest req{k, catalog_function(name), lambda_range(0, 5, 0.5)};
                auto rep = factorization_check(req, c.fault);
                if (rep.max_discrepancy < ftol) return std::nullopt;
                return rep.to_json();
              });
    }
  }
  if (c.cfg.quick) return;

  c.check("fourier_specialization", {{"functions", {"gaussian", "indicator"}}}, [&]() -> std::optional<json> {
    auto g = catalog_function("gaussian");
    TransformRequest rg{0.0, g, {0.0, 1.0}};
    auto v = kummer_transform(rg);
    auto w = fourier_transform(rg);
    if (v != w) return json{{"error", "kappa = 0 differs from the Fourier path"}};
    double want = std::sqrt(2 * std::numbers::pi);
    if (std::abs(v[0] - want) > c.cfg.tolerance("gaussian_integral"))
      return json{{"function", "gaussian"}, {"lambda", 0}, {"value", cstr(v[0])}, {"expected", want}};
    TransformRequest ri{0.0, catalog_function("indicator"), {std::numbers::pi}};
    Complex z = kummer_transform(ri)[0];
    if (std::abs(z) > c.cfg.tolerance("indicator_zero"))
      return json{{"function", "indicator"}, {"lambda", std::numbers::pi}, {"value", cstr(z)}};
    return std::nullopt;
  });

  c.check("linearity", {{"functions", {"bump", "smooth_indicator"}}, {"a", "3/2"}, {"b", "-2"}, {"kappa", 0.5},
                        {"lambda", "0:5:0.5"}, {"tolerance", 1e-10}},
          [&]() -> std::optional<json> {
            auto f = catalog_function("bump"), g = catalog_function("smooth_indicator");
            OneVarFunction h;
            h.id = "1.5*bump-2*smooth_indicator";
            h.max_order = std::min(f.max_order, g.max_order);
            h.lo = std::min(f.lo, g.lo);
            h.hi = std::max(f.hi, g.hi);
            h.jet = [f, g](double x, int order) {
              auto a = f.derivatives(x, order), b = g.derivatives(x, order);
              for (int r = 0; r <= order; ++r) a[r] = 1.5 * a[r] - 2.0 * b[r];
              return a;
            };
            auto grid = lambda_range(0, 5, 0.5);
            auto Ff = transform_grid(TransformRequest{0.5, f, grid}, c.cfg.execution);
            auto Fg = transform_grid(TransformRequest{0.5, g, grid}, c.cfg.execution);
            auto Fh = transform_grid(TransformRequest{0.5, h, grid}, c.cfg.execution);
            for (std::size_t i = 0; i < grid.size(); ++i) {
              Complex want = 1.5 * Ff[i] - 2.0 * Fg[i];
              if (std::abs(Fh[i] - want) > 1e-10)
                return json{{"lambda", grid[i]}, {"combined", cstr(Fh[i])}, {"linear", cstr(want)}};
            }
            return std::nullopt;
          });

  const double factor = c.cfg.tolerance("decay_factor");
  for (auto [name, k] : {std::pair{"bump", 0.5}, std::pair{"indicator", 0.0}}) {
    c.check("c0_decay", {{"function", name}, {"kappa", k}, {"lambda", {10, 100, 1000}}, {"factor", factor}},
            [&]() -> std::optional<json> {
              TransformRequest req{k, catalog_function(name), {10.0}};
              auto rep = c0_decay_check(req, factor);
              if (rep.passed()) return std::nullopt;
              return rep.to_json();
            });
  }
}

}  // namespace

VerificationReport run_suites(const SuiteConfig& config) {
  config.validate();
  VerificationReport report;
  report.config = config.to_json();
  report.config["precision"] = to_string(precision_from_env());
  for (const auto& name : all_suites()) {  // fixed order regardless of selection order
    if (std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) continue;
    Ctx c(config, name, report.records);
    if (name == "geometry") suite_geometry(c);
    else if (name == "commutativity") suite_commutativity(c);
    else if (name == "intertwining") suite_intertwining(c);
    else if (name == "inverse") suite_inverse(c);
    else if (name == "kummer") suite_kummer(c);
    else if (name == "laplacian") suite_laplacian(c);
    else if (name == "multivar_eigen") suite_multivar(c);
    else if (name == "transform") suite_transform(c);
  }
  return report;
}

}  // namespace projdunkl
