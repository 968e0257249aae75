#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace regrates::verify {

/// One verified inequality or golden value: lhs against rhs at the given
/// tolerance. For counting checks (e.g. "zero violations over 100
/// measures") lhs is the violation count and rhs the allowed count.
struct CheckRecord {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  int failed() const;
  bool pass() const { return failed() == 0; }
};

// The acceptance batteries, one per criterion.
std::vector<CheckRecord> check_zeta_golden();                            // 1
std::vector<CheckRecord> check_landweber_example(long n = 1000000);      // 2
std::vector<CheckRecord> check_constants();                              // 3
std::vector<CheckRecord> check_dirac_closed_forms();                     // 4
std::vector<CheckRecord> check_powerlaw_interp();                        // 5
std::vector<CheckRecord> check_propositions(std::uint64_t seed, int measures = 100);  // 6
std::vector<CheckRecord> check_distance_identities(std::uint64_t seed);  // 7
std::vector<CheckRecord> check_noisy_end_to_end(std::uint64_t seed);     // 8
std::vector<CheckRecord> check_bvp_stability();                          // 9
std::vector<CheckRecord> check_variational(std::uint64_t seed);          // 10

/// suite in {constants, propositions, examples, all}.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace regrates::verify
