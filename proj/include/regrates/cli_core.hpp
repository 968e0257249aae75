#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "regrates/noisy.hpp"
#include "regrates/spectral.hpp"
#include "regrates/verify.hpp"

namespace regrates::cli {

/// Schema or value problems in user input; the CLI maps these to exit
/// code 2 with the message on stderr.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoiseBlock {
  std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  NoiseStrategy strategy = NoiseStrategy::random;
  std::uint64_t seed = 1;
};

struct MethodBlock {
  std::string kind = "tikhonov";  // tikhonov | landweber | cutoff
  int k = 1;
  double sigma = 0.0;  // 0 = 1/||T*T||
  double tau = 1.5;
  double r = 0.0;
  std::vector<double> nus;
  std::vector<double> gammas;
};

/// A parsed problem file: either an inline atom list or a built-in
/// example id, plus optional prior / noise / method blocks. All
/// spectral-core preconditions are validated during parsing.
struct ProblemFile {
  int schema = 1;
  SpectralProblem problem;
  std::vector<double> prior;  // empty = zero prior
  NoiseBlock noise;
  bool has_noise = false;
  MethodBlock method;
};

ProblemFile load_problem_file(const std::string& path);
ProblemFile parse_problem_text(const std::string& text);

/// Shortest round-trip decimal formatting (17 significant digits).
std::string format_value(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;  // emitted as '#' comment lines in CSV
};

std::string table_to_csv(const Table& t);
std::string table_to_json(const Table& t);

/// Norm table: one row per (nu, gamma) pair with the four norms and the
/// embedding-chain columns.
Table cmd_norms(const ProblemFile& pf, std::vector<double> nus, std::vector<double> gammas);

/// Rate table: one row per nu with the located supremum and the
/// proposition bounds.
Table cmd_rates(const ProblemFile& pf, const std::string& method, std::vector<double> nus,
                int k, double sigma, double r);

/// Noisy sweep table: one row per delta plus fitted slopes in the footer.
Table cmd_noisy(const ProblemFile& pf, const std::string& method, double tau,
                double sigma, std::uint64_t seed);

/// JSON verification report and its schema check (used for the round-trip
/// guarantee).
std::string report_to_json(const verify::SuiteResult& res);
bool validate_report_json(const std::string& text, std::string* error);

}  // namespace regrates::cli
