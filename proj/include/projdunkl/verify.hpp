#pragma once

// Verification suites. Every random choice comes from a SuiteRng seeded by
// (config seed, suite name), so selecting a subset of suites does not change
// the samples drawn by the others.

#include "projdunkl/fault.hpp"
#include "projdunkl/kernels.hpp"
#include "projdunkl/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace projdunkl {

inline constexpr const char* kToolVersion = "0.3.0";

std::vector<std::string> all_suites();

/// mt19937_64 with portable derived draws: integers by rejection sampling on
/// raw 64-bit outputs, doubles from the top 53 bits.
class SuiteRng {
 public:
  SuiteRng(std::uint64_t seed, const std::string& stream);
  std::uint64_t below(std::uint64_t n);
  long range(long lo, long hi);  // inclusive
  double uniform(double lo, double hi);
  /// p/q with 1 <= q <= max_den and lo <= p/q <= hi.
  Rational rational(const Rational& lo, const Rational& hi, long max_den);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

struct SuiteConfig {
  std::vector<std::string> suites = all_suites();
  std::uint64_t seed = 20130917;
  int max_dimension = 6;
  /// Intertwining uses this degree; commutativity, laplacian and inverse use min(6, max_degree).
  int max_degree = 8;
  std::vector<Rational> kappa_set{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
  std::map<std::string, double> tolerances;
  int commutator_tuples = 200;
  Fault fault = Fault::None;
  Execution execution = Execution::Parallel;
  /// Smaller sweeps, used when only fault detection matters.
  bool quick = false;

  /// max_dimension in [1,8], max_degree in [0,10], known suite names,
  /// non-empty kappa set; the message names the offending field.
  void validate() const;
  double tolerance(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Defaults for every tolerance key accepted in SuiteConfig::tolerances.
const std::map<std::string, double>& default_tolerances();

struct CheckRecord {
  std::string suite;
  std::string check;
  bool passed = true;
  nlohmann::json inputs;
  std::string digest;  // FNV-1a 64 of inputs.dump(), hex
  nlohmann::json witness;
  double elapsed_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const;
};

struct VerificationReport {
  nlohmann::json config;
  std::vector<CheckRecord> records;

  bool all_passed() const;
  std::size_t failures() const;
  std::vector<std::string> failed_suites() const;
  /// JSON lines, one per record, in execution order.
  std::string jsonl(bool with_timing = true) const;
  nlohmann::json summary() const;
};

std::string fnv1a_hex(const std::string& data);

/// Runs the selected suites in a fixed order. Exceptions inside a check become
/// failed records carrying the message.
VerificationReport run_suites(const SuiteConfig& config);

/// Writes `path` (JSON lines) and `path + ".summary.json"`.
void write_report(const VerificationReport& report, const std::string& path);

/// The fault each suite is designed to detect.
Fault designated_fault(const std::string& suite);

}  // namespace projdunkl
