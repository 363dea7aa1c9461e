// projdunkl command line: verify | eval | transform

#include "projdunkl/catalog.hpp"
#include "projdunkl/gamma_ratio.hpp"
#include "projdunkl/intertwine.hpp"
#include "projdunkl/kernels.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/opengine.hpp"
#include "projdunkl/transform.hpp"
#include "projdunkl/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace projdunkl;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt(Complex z) {
  if (z.imag() == 0) return fmt(z.real());
  std::string im = fmt(std::abs(z.imag()));
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& piece : split(s, ',')) out.push_back(parse_rational(piece));
  if (out.empty()) throw UsageError("empty multiplicity list");
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + s + "' at position 0");
  }
  if (used != s.size()) throw UsageError("malformed number '" + s + "' at position " + std::to_string(used));
  return v;
}

// "a", "bi", "a+bi", "a-bi"
Complex parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0};
  s.pop_back();
  std::size_t split_at = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split_at = i;
  if (split_at == std::string::npos) {
    if (s.empty() || s == "+") return {0, 1};
    if (s == "-") return {0, -1};
    return {0, parse_double(s)};
  }
  std::string re = s.substr(0, split_at), im = s.substr(split_at);
  if (im == "+") return {parse_double(re), 1};
  if (im == "-") return {parse_double(re), -1};
  return {parse_double(re), parse_double(im)};
}

// "lo:hi:step" or a single value
std::vector<double> parse_grid(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() == 1) return {parse_double(parts[0])};
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:step, got '" + s + "'");
  double lo = parse_double(parts[0]), hi = parse_double(parts[1]), step = parse_double(parts[2]);
  if (!(step > 0) || hi < lo) throw UsageError("grid '" + s + "' needs lo <= hi and step > 0");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    double v = lo + i * step;
    if (v > hi + 1e-9 * step) break;
    out.push_back(v);
    if (out.size() > 1000000) throw UsageError("grid '" + s + "' has more than 10^6 points");
  }
  return out;
}

OrthogonalSubsystem make_subsystem(const std::string& family, const std::string& roots_text, std::size_t N,
                                   const std::vector<Rational>& kappas) {
  auto broadcast = [&](std::size_t n) {
    if (kappas.size() == n) return kappas;
    if (kappas.size() == 1) return std::vector<Rational>(n, kappas[0]);
    throw UsageError("expected 1 or " + std::to_string(n) + " multiplicities, got " + std::to_string(kappas.size()));
  };
  if (!roots_text.empty()) {
    std::vector<RationalVector> roots;
    for (const auto& r : split(roots_text, ';')) roots.push_back(parse_vector(r));
    return validate_subsystem(roots, broadcast(roots.size()), roots.front().dim());
  }
  if (family == "direct") return build_subsystem_direct(N, broadcast(N));
  if (family == "A") return build_subsystem_A(N, broadcast(N / 2));
  if (family == "B") {
    auto k = broadcast(2 * (N / 2));
    std::vector<Rational> kp, km;
    for (std::size_t i = 0; i < k.size(); i += 2) {
      kp.push_back(k[i]);
      km.push_back(k[i + 1]);
    }
    return build_subsystem_B(N, kp, km);
  }
  throw UsageError("unknown family '" + family + "' (direct, A, B)");
}

void print_parse_error(const std::string& what, const std::string& text, std::size_t pos) {
  std::cerr << "error: " << what << "\n  " << text << "\n  " << std::string(std::min(pos, text.size()), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-type Dunkl operators: verification, evaluation, Kummer transform"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("projdunkl ") + kToolVersion);

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> suites;
  std::uint64_t seed = SuiteConfig{}.seed;
  std::string out_path, kappa_set_text;
  int max_dim = 6, max_deg = 8, tuples = 200;
  std::vector<std::string> tol_overrides;
  bool perturb_kappa = false, perturb_root = false, drop_projection = false, serial = false, quick = false;
  verify->add_option("--suite", suites, "suite(s) to run, repeatable or comma separated")->delimiter(',');
  verify->add_option("--seed", seed, "PRNG seed (mt19937_64)");
  verify->add_option("--out", out_path, "JSON-lines report path; summary goes to PATH.summary.json");
  verify->add_option("--max-dimension", max_dim, "largest ambient dimension (<= 8)");
  verify->add_option("--max-degree", max_deg, "largest polynomial degree (<= 10)");
  verify->add_option("--kappa-set", kappa_set_text, "comma separated rational multiplicities");
  verify->add_option("--tolerance", tol_overrides, "override, KEY=VALUE (repeatable)");
  verify->add_option("--tuples", tuples, "random commutator tuples");
  auto* fk = verify->add_flag("--perturb-kappa", perturb_kappa, "inject a multiplicity fault");
  auto* fr = verify->add_flag("--perturb-root", perturb_root, "inject a root fault");
  auto* fd = verify->add_flag("--drop-projection", drop_projection, "drop one projection term");
  fk->excludes(fr)->excludes(fd);
  fr->excludes(fd);
  verify->add_flag("--serial", serial, "use the serial reference kernels");
  verify->add_flag("--quick", quick, "reduced sweeps");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate T, chi, M or an Erdelyi-Kober operator");
  std::string what, kappa_text = "1", poly_text, xi_text, family = "direct", roots_text, z_text, op = "I";
  std::string gamma_text = "0", delta_text = "1", lambda_text, x_text;
  eval->add_option("what", what, "T | chi | M | EK")->required()->check(CLI::IsMember({"T", "chi", "M", "EK"}));
  eval->add_option("--kappa", kappa_text, "multiplicity, or comma list (one per root)");
  eval->add_option("--poly", poly_text, "polynomial in x1..xN");
  eval->add_option("--xi", xi_text, "direction (a, b, ...)");
  eval->add_option("--family", family, "direct | A | B");
  eval->add_option("--roots", roots_text, "explicit roots '(1,-1);(0,0,1)'");
  eval->add_option("--z", z_text, "argument of bold M (a, bi, a+bi)");
  eval->add_option("--lambda", lambda_text, "M grid: lambda values lo:hi:step");
  eval->add_option("--x", x_text, "M grid: x values lo:hi:step");
  eval->add_option("--gamma", gamma_text, "Erdelyi-Kober gamma");
  eval->add_option("--delta", delta_text, "Erdelyi-Kober delta");
  eval->add_option("--op", op, "I | D")->check(CLI::IsMember({"I", "D"}));

  // transform
  auto* tr = app.add_subcommand("transform", "Kummer transform of a catalog function, CSV");
  std::string fname, tkappa = "0", tlambda = "0:5:0.5", tout, treport, tcheck;
  tr->add_option("--function", fname, "catalog function")->required();
  tr->add_option("--kappa", tkappa, "multiplicity (0 = Fourier)");
  tr->add_option("--lambda", tlambda, "lo:hi:step or a single value");
  tr->add_option("--out", tout, "CSV path (default stdout)");
  tr->add_option("--check", tcheck, "factorization | decay")->check(CLI::IsMember({"factorization", "decay"}));
  tr->add_option("--report", treport, "JSON path for --check (default stderr)");
  tr->add_flag("--serial", serial, "serial reference kernel");

  CLI11_PARSE(app, argc, argv);

  try {
    (void)precision_from_env();  // reject bad values up front

    if (*verify) {
      SuiteConfig cfg;
      if (!suites.empty()) cfg.suites = suites;
      cfg.seed = seed;
      cfg.max_dimension = max_dim;
      cfg.max_degree = max_deg;
      cfg.commutator_tuples = tuples;
      cfg.quick = quick;
      cfg.execution = serial ? Execution::Serial : Execution::Parallel;
      if (!kappa_set_text.empty()) cfg.kappa_set = parse_rationals(kappa_set_text);
      for (const auto& t : tol_overrides) {
        auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("tolerance override must be KEY=VALUE, got '" + t + "'");
        cfg.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1));
      }
      if (perturb_kappa) cfg.fault = Fault::PerturbKappa;
      if (perturb_root) cfg.fault = Fault::PerturbRoot;
      if (drop_projection) cfg.fault = Fault::DropProjection;

      auto report = run_suites(cfg);
      if (out_path.empty()) {
        std::cout << report.jsonl();
      } else {
        write_report(report, out_path);
      }
      auto sum = report.summary();
      for (auto& [suite, counts] : sum["suites"].items())
        std::cerr << suite << ": " << counts["pass"] << " pass, " << counts["fail"] << " fail\n";
      std::cerr << (report.all_passed() ? "PASS" : "FAIL") << " (" << report.failures() << " failed of "
                << report.records.size() << ")\n";
      return report.all_passed() ? 0 : 1;
    }

    if (*eval) {
      if (what == "T" || what == "chi") {
        if (poly_text.empty()) throw UsageError("--poly is required");
        std::size_t N = 0;
        std::optional<RationalVector> xi;
        if (!xi_text.empty()) {
          xi = parse_vector(xi_text);
          N = xi->dim();
        }
        MPoly p(1);
        try {
          p = parse_poly(poly_text, N);
        } catch (const PolyParseError& e) {
          print_parse_error(e.what(), poly_text, e.position());
          return 2;
        }
        N = p.dim();
        auto sub = make_subsystem(family, roots_text, N, parse_rationals(kappa_text));
        if (sub.dim() != N) throw UsageError("roots have dimension " + std::to_string(sub.dim()) + ", polynomial " + std::to_string(N));
        if (what == "T") {
          if (!xi) throw UsageError("--xi is required for T");
          std::cout << to_string(apply_T_poly(ProjectionDunklOperator(sub, *xi), p)) << "\n";
        } else {
          auto r = chi_poly_scaled(p, sub);
          std::cout << to_string(r.poly) << " (scale: " << to_string(r.scale) << ")\n";
        }
        return 0;
      }
      if (what == "M") {
        double kappa = to_double(parse_rational(kappa_text));
        if (!lambda_text.empty() || !x_text.empty()) {
          if (lambda_text.empty() || x_text.empty()) throw UsageError("grid mode needs both --lambda and --x");
          std::vector<double> ks;
          for (const auto& k : parse_rationals(kappa_text)) ks.push_back(to_double(k));
          auto ls = parse_grid(lambda_text), xs = parse_grid(x_text);
          auto vals = kummer_grid(ks, ls, xs, Execution::Parallel);
          std::cout << "kappa,lambda,x,re,im,abs\n";
          std::size_t i = 0;
          for (double k : ks)
            for (double l : ls)
              for (double x : xs) {
                Complex v = vals[i++];
                std::cout << fmt(k) << ',' << fmt(l) << ',' << fmt(x) << ',' << fmt(v.real()) << ',' << fmt(v.imag())
                          << ',' << fmt(std::abs(v)) << '\n';
              }
          return 0;
        }
        if (z_text.empty()) throw UsageError("--z is required (or --lambda and --x for a grid)");
        std::cout << fmt(bold_M(kappa, parse_complex(z_text))) << "\n";
        return 0;
      }
      // EK
      if (poly_text.empty()) throw UsageError("--poly is required");
      MPoly p(1);
      try {
        p = parse_poly(poly_text, 1);
      } catch (const PolyParseError& e) {
        print_parse_error(e.what(), poly_text, e.position());
        return 2;
      }
      auto g = GammaPoly::from_poly(p);
      Rational gamma = parse_rational(gamma_text), delta = parse_rational(delta_text);
      std::cout << to_string(op == "I" ? ek_I(g, gamma, delta) : ek_D(g, gamma, delta)) << "\n";
      return 0;
    }

    if (*tr) {
      TransformRequest req{to_double(parse_rational(tkappa)), catalog_function(fname), parse_grid(tlambda)};
      req.validate();
      std::ostringstream csv;
      csv << "lambda,re,im,abs\n";
      auto vals = transform_grid(req, serial ? Execution::Serial : Execution::Parallel);
      for (std::size_t i = 0; i < vals.size(); ++i)
        csv << fmt(req.lambda_grid[i]) << ',' << fmt(vals[i].real()) << ',' << fmt(vals[i].imag()) << ','
            << fmt(std::abs(vals[i])) << '\n';
      if (tout.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(tout);
        if (!f) throw std::runtime_error("cannot open '" + tout + "'");
        f << csv.str();
      }
      int rc = 0;
      if (!tcheck.empty()) {
        nlohmann::json j;
        if (tcheck == "factorization") {
          auto rep = factorization_check(req);
          j = rep.to_json();
          if (!rep.skipped && rep.max_discrepancy >= 1e-7) rc = 1;
        } else {
          auto rep = c0_decay_check(req);
          j = rep.to_json();
          if (!rep.passed()) rc = 1;
        }
        if (treport.empty()) {
          std::cerr << j.dump(2) << "\n";
        } else {
          std::ofstream f(treport);
          if (!f) throw std::runtime_error("cannot open '" + treport + "'");
          f << j.dump(2) << "\n";
        }
      }
      return rc;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
