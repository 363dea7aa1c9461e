// Acceptance run: one line per criterion, exit 1 if any selected criterion fails.

#include "projdunkl/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>

using namespace projdunkl;

namespace {

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::vector<std::string> suites;
  std::set<std::string> checks;  // empty: every record of the suites
};

const std::vector<Criterion> kCriteria{
    {1, "exact commutativity", 60, {"commutativity"}, {"commutator_zero"}},
    {2, "exact intertwining", 120, {"intertwining"}, {"intertwining_identity"}},
    {3, "left inverse of chi", 10, {"inverse"}, {"left_inverse_exact", "left_inverse_numeric"}},
    {4, "Kummer eigenfunction", 5, {"kummer"}, {"eigen_residual", "ode_residual"}},
    {5, "bold M bounds", 10, {"kummer"}, {"bold_M_bounded_by_one", "series_matches_integral"}},
    {6, "transform bound and factorization", 60, {"transform"}, {"sup_bound", "factorization"}},
    {7, "Laplacian consistency", 30, {"laplacian"}, {"laplacian_expanded_form"}},
    {8, "multivariate eigenfunctions", 20, {"multivar_eigen"}, {"eigen_residual", "value_at_origin_is_one"}},
    {9, "fault injection", 30, {}, {}},
};

std::string brief(const nlohmann::json& j) {
  auto s = j.dump();
  return s.size() > 240 ? s.substr(0, 240) + "..." : s;
}

bool run_checks(const Criterion& c, std::string& detail) {
  SuiteConfig cfg;
  cfg.suites = c.suites;
  auto report = run_suites(cfg);
  std::size_t n = 0, failed = 0;
  const CheckRecord* first = nullptr;
  for (const auto& r : report.records) {
    if (!c.checks.contains(r.check)) continue;
    ++n;
    if (!r.passed) {
      ++failed;
      if (!first) first = &r;
    }
  }
  detail = std::to_string(n) + " checks, " + std::to_string(failed) + " failed";
  if (c.id == 1 && n < 200) {
    detail += " (fewer than 200 tuples)";
    return false;
  }
  if (first) detail += "; first: " + first->check + " " + brief(first->witness);
  return n > 0 && failed == 0;
}

bool run_faults(std::string& detail) {
  bool ok = true;
  std::string parts;
  for (const auto& suite : all_suites()) {
    SuiteConfig cfg;
    cfg.suites = {suite};
    cfg.quick = true;
    auto clean = run_suites(cfg);
    cfg.fault = designated_fault(suite);
    auto faulty = run_suites(cfg);
    bool witnessed = false;
    for (const auto& r : faulty.records)
      if (!r.passed && !r.witness.is_null()) witnessed = true;
    bool detected = !faulty.all_passed() && faulty.failures() > clean.failures() && witnessed;
    ok = ok && detected;
    parts += " " + suite + "(" + to_string(cfg.fault) + "):" + (detected ? "detected" : "MISSED");
  }
  detail = "suites" + parts;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const auto& c : kCriteria) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.id == 9 ? run_faults(detail) : run_checks(c, detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs <= c.limit_s;
    if (!in_time) detail += "; over the time limit";
    ok = ok && in_time;
    all_ok = all_ok && ok;
    std::printf("criterion %d [%s] %s: %s (%.1f s, limit %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
