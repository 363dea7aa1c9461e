#include "projdunkl/kernels.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/verify.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>

using namespace projdunkl;

namespace {

RationalVector V(const char* s) { return parse_vector(s); }

CommutatorCase b_case(int degree, bool perturb) {
  auto s = build_subsystem_B(4, {Rational(1, 2), 3}, {Rational(7, 4), 0});
  std::vector<RationalVector> roots(s.roots().begin(), s.roots().end());
  std::vector<Rational> k(s.kappas().begin(), s.kappas().end()), ke = k;
  if (perturb) ke[0] += Rational(1, 2);
  return {roots, k, ke, V("(1,-2,1/2,3)"), V("(0,1,-1,2)"), degree};
}

SuiteConfig quick(std::vector<std::string> suites) {
  SuiteConfig c;
  c.suites = std::move(suites);
  c.quick = true;
  return c;
}

}  // namespace

TEST(Kernels, ForEachIndexPropagatesFirstError) {
  std::atomic<int> count = 0;
  try {
    for_each_index(100, Execution::Parallel, [&](std::size_t i) {
      ++count;
      if (i == 17 || i == 60) throw std::runtime_error("boom " + std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "boom 17");
  }
  EXPECT_EQ(count.load(), 100);
}

TEST(Kernels, CommutatorSerialParallelAgree) {
  std::vector<CommutatorCase> cases{b_case(4, false), b_case(4, true), b_case(2, false)};
  auto s = commutator_sweep(cases, Execution::Serial);
  auto p = commutator_sweep(cases, Execution::Parallel);
  ASSERT_EQ(s.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(s[i].passed(), p[i].passed());
    EXPECT_EQ(s[i].monomials_checked, p[i].monomials_checked);
    EXPECT_EQ(s[i].witness, p[i].witness);
  }
  EXPECT_TRUE(s[0].passed());
  EXPECT_FALSE(s[1].passed());
  EXPECT_TRUE(s[1].witness.has_value());
  EXPECT_EQ(s[0].monomials_checked, monomials_up_to_degree(4, 4).size());
}

TEST(Kernels, IntertwiningSerialParallelAgree) {
  IntertwiningCase c{build_subsystem_A(4, {Rational(1, 2), 2}), V("(1,0,-1,2)"), 5, Fault::None};
  auto a = intertwining_case(c, Execution::Serial), b = intertwining_case(c, Execution::Parallel);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.monomials_checked, b.monomials_checked);
}

TEST(Kernels, KummerGridOrderAndAgreement) {
  std::vector<double> ks{0.5, 2.0}, ls{1.0, 3.0}, xs{-1.0, 0.0, 2.0};
  auto s = kummer_grid(ks, ls, xs, Execution::Serial);
  auto p = kummer_grid(ks, ls, xs, Execution::Parallel);
  EXPECT_EQ(s, p);
  ASSERT_EQ(s.size(), 12u);
  EXPECT_EQ(s[1 * 6 + 1 * 3 + 2], bold_M(2.0, Complex(0, 6.0)));
}

TEST(Verify, Fnv1a) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Verify, RngIsReproducibleAndPortable) {
  SuiteRng a(42, "x"), b(42, "x"), c(42, "y");
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  bool differs = false;
  SuiteRng a2(42, "x");
  for (int i = 0; i < 20; ++i) differs = differs || a2.below(1u << 30) != c.below(1u << 30);
  EXPECT_TRUE(differs);
  SuiteRng r(1, "q");
  for (int i = 0; i < 200; ++i) {
    auto q = r.rational(Rational(0), Rational(4), 4);
    EXPECT_GE(q, 0);
    EXPECT_LE(q, 4);
    EXPECT_LE(q.get_den(), 4);
    double u = r.uniform(-1, 1);
    EXPECT_GE(u, -1);
    EXPECT_LT(u, 1);
  }
}

TEST(Verify, ConfigValidationNamesField) {
  auto expect_msg = [](SuiteConfig c, const char* field) {
    try {
      c.validate();
      ADD_FAILURE() << "accepted";
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  SuiteConfig c;
  c.max_dimension = 9;
  expect_msg(c, "max_dimension");
  c = {};
  c.max_degree = 11;
  expect_msg(c, "max_degree");
  c = {};
  c.suites = {"geometry", "bogus"};
  expect_msg(c, "suites");
  c = {};
  c.kappa_set = {Rational(0)};
  expect_msg(c, "kappa_set");
  c = {};
  c.tolerances["nope"] = 1;
  expect_msg(c, "tolerances");
  c = {};
  c.tolerances["duality"] = -1;
  expect_msg(c, "tolerances");
  EXPECT_NO_THROW(SuiteConfig{}.validate());
}

TEST(Verify, DesignatedFaults) {
  EXPECT_EQ(designated_fault("commutativity"), Fault::PerturbKappa);
  EXPECT_EQ(designated_fault("geometry"), Fault::PerturbRoot);
  EXPECT_EQ(designated_fault("laplacian"), Fault::DropProjection);
  EXPECT_THROW(designated_fault("x"), std::invalid_argument);
}

TEST(Verify, DeterministicReports) {
  auto c = quick({"geometry", "commutativity", "laplacian", "multivar_eigen"});
  c.seed = 99;
  auto a = run_suites(c), b = run_suites(c);
  EXPECT_EQ(a.jsonl(false), b.jsonl(false));
  c.execution = Execution::Serial;
  EXPECT_EQ(run_suites(c).jsonl(false), a.jsonl(false));
  c.seed = 100;
  EXPECT_NE(run_suites(c).jsonl(false), a.jsonl(false));
  EXPECT_TRUE(a.all_passed());
  auto s = a.summary();
  EXPECT_EQ(s["version"], kToolVersion);
  EXPECT_EQ(s["status"], "pass");
  EXPECT_EQ(s["config"]["seed"], 99);
}

TEST(Verify, SelectionOrderDoesNotMatter) {
  auto a = run_suites(quick({"laplacian", "geometry"}));
  auto b = run_suites(quick({"geometry", "laplacian"}));
  EXPECT_EQ(a.jsonl(false), b.jsonl(false));
  auto g = run_suites(quick({"geometry"}));
  EXPECT_EQ(a.jsonl(false).substr(0, g.jsonl(false).size()), g.jsonl(false));
}

TEST(Verify, MaxDegreeZeroIsTrivial) {
  auto c = quick({"commutativity", "intertwining", "laplacian"});
  c.max_degree = 0;
  auto r = run_suites(c);
  EXPECT_TRUE(r.all_passed()) << r.jsonl();
}

TEST(Verify, EachSuiteDetectsItsFault) {
  for (const auto& suite : all_suites()) {
    auto clean = run_suites(quick({suite}));
    auto c = quick({suite});
    c.fault = designated_fault(suite);
    auto faulty = run_suites(c);
    EXPECT_FALSE(faulty.all_passed()) << suite;
    EXPECT_GT(faulty.failures(), clean.failures()) << suite;
    for (const auto& r : faulty.records) {
      if (r.passed) continue;
      EXPECT_TRUE(r.witness.contains("inputs")) << suite;
      EXPECT_EQ(r.inputs["fault"], to_string(c.fault));
    }
  }
}

TEST(Verify, CommutatorFaultCarriesPolynomialWitness) {
  auto c = quick({"commutativity"});
  c.fault = Fault::PerturbKappa;
  auto r = run_suites(c);
  bool found = false;
  for (const auto& rec : r.records)
    if (!rec.passed && rec.check == "commutator_zero") {
      found = true;
      EXPECT_TRUE(rec.witness["difference"].is_string());
      EXPECT_NO_THROW(parse_poly(rec.witness["difference"].get<std::string>()));
    }
  EXPECT_TRUE(found);
}

TEST(Verify, WriteReport) {
  auto r = run_suites(quick({"geometry"}));
  auto path = (std::filesystem::temp_directory_path() / "projdunkl_report_test.jsonl").string();
  write_report(r, path);
  std::ifstream a(path), b(path + ".summary.json");
  ASSERT_TRUE(a && b);
  std::string line;
  std::size_t n = 0;
  while (std::getline(a, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("digest"));
    EXPECT_TRUE(j.contains("elapsed_ms"));
    ++n;
  }
  EXPECT_EQ(n, r.records.size());
  auto s = nlohmann::json::parse(b);
  EXPECT_EQ(s["checks"], r.records.size());
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".summary.json");
  EXPECT_THROW(write_report(r, "/nonexistent-dir/x.jsonl"), std::runtime_error);
}
