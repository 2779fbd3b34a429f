#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "capamp/matcore.hpp"
#include "capamp/states.hpp"

namespace capamp::cli {

// abs: |actual - expected| <= tolerance
// le:  actual <= expected + tolerance
// ge:  actual >= expected - tolerance
// lt:  actual < expected
// gt:  actual > expected
enum class Relation { Abs, Le, Ge, Lt, Gt };

struct CheckResult {
  std::string id;
  double expected;
  double actual;
  double tolerance;
  Relation relation;
  bool pass;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::vector<CheckResult> checks;
  bool pass = true;
  std::optional<double> wall_seconds;
};

struct VerifyOptions {
  // Replaces the 1e-9 tolerance of identity checks; fixed tolerances stay.
  double tol = 1e-9;
  std::uint64_t seed = 0;
  Index dimension_cap = kDefaultZetaCap;
  int threads = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemmas", "amplification", "gap", "superactivation",
                                              "all"};
  return names;
}

// Throws DomainError on an unknown suite.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace capamp::cli
