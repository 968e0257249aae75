#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "regrates/cli_core.hpp"
#include "regrates/verify.hpp"

using namespace regrates;

namespace {

const char* kInlineProblem = R"({
  "schema": 1,
  "label": "two-atom",
  "problem": {"atoms": [[0.5, 1.0], [1.0, -2.0]]},
  "noise": {"deltas": [1e-1, 1e-2, 1e-3], "strategy": "random", "seed": 7},
  "method": {"kind": "tikhonov", "k": 1, "nu": [0.0, 0.5], "gamma": [1.0]}
})";

}  // namespace

TEST_CASE("problem file parsing and validation") {
  const cli::ProblemFile pf = cli::parse_problem_text(kInlineProblem);
  CHECK(pf.problem.element.size() == 2);
  CHECK(pf.problem.label == "two-atom");
  CHECK(pf.has_noise);
  CHECK(pf.noise.deltas.size() == 3);
  CHECK(pf.method.nus.size() == 2);

  CHECK_THROWS_AS(cli::parse_problem_text("not json"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_problem_text(R"({"schema":1})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_problem_text(R"({"problem":{"atoms":[[0.0,1.0]]}})"),
                  cli::InputError);
  CHECK_THROWS_AS(cli::parse_problem_text(R"({"problem":{"atoms":[[1.0]]}})"),
                  cli::InputError);
  CHECK_THROWS_AS(cli::parse_problem_text(R"({"problem":{"example":"nope"}})"),
                  cli::InputError);
  CHECK_THROWS_AS(
      cli::parse_problem_text(R"({"problem":{"atoms":[[1.0,1.0]]},"prior":[1,2]})"),
      cli::InputError);
  CHECK_THROWS_AS(
      cli::parse_problem_text(
          R"({"problem":{"atoms":[[1.0,1.0]]},"noise":{"strategy":"typo"}})"),
      cli::InputError);
}

TEST_CASE("norms table") {
  const cli::ProblemFile pf = cli::parse_problem_text(kInlineProblem);
  const cli::Table t = cli::cmd_norms(pf, {0.0, 0.5}, {1.0});
  REQUIRE(t.rows.size() == 2);
  REQUIRE(t.header.size() == t.rows[0].size());
  // nu = 0 row: interp equals the plain norm
  CHECK(t.rows[0][3] == t.rows[0][6]);
  // sandwich pass column
  CHECK(t.rows[0].back() == "true");
  CHECK(t.rows[1].back() == "true");

  CHECK_THROWS_AS(cli::cmd_norms(pf, {2.0}, {1.0}), cli::InputError);
}

TEST_CASE("rates table and empty range") {
  const cli::ProblemFile pf = cli::parse_problem_text(kInlineProblem);
  const cli::Table t = cli::cmd_rates(pf, "tikhonov", {0.0, 0.5, 1.0}, 1, 0.0, 0.0);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) CHECK(row.back() == "true");

  cli::ProblemFile no_nus = pf;
  no_nus.method.nus.clear();
  const cli::Table empty = cli::cmd_rates(no_nus, "tikhonov", {}, 1, 0.0, 0.0);
  CHECK(empty.rows.empty());
  CHECK(!empty.header.empty());

  // cutoff rates: the supremum is the tail norm, bounds collapse
  const cli::Table cut = cli::cmd_rates(pf, "cutoff", {0.0, 0.5}, 1, 0.0, 0.0);
  REQUIRE(cut.rows.size() == 2);
  CHECK(cut.rows[0][3] == cut.rows[0][5]);  // sup == lower
  CHECK(cut.rows[0][3] == cut.rows[0][6]);  // sup == upper
  CHECK_THROWS_AS(cli::cmd_rates(pf, "unknown", {0.5}, 1, 0.0, 0.0), cli::InputError);
}

TEST_CASE("noisy table determinism and formats") {
  const cli::ProblemFile pf = cli::parse_problem_text(kInlineProblem);
  const cli::Table t1 = cli::cmd_noisy(pf, "tikhonov", 1.5, 0.0, 7);
  const cli::Table t2 = cli::cmd_noisy(pf, "tikhonov", 1.5, 0.0, 7);
  CHECK(cli::table_to_csv(t1) == cli::table_to_csv(t2));  // byte-identical
  CHECK(cli::table_to_json(t1) == cli::table_to_json(t2));
  REQUIRE(t1.rows.size() == 3);
  CHECK(!t1.footer.empty());

  const std::string csv = cli::table_to_csv(t1);
  CHECK(csv.find("delta,parameter,error,residual") == 0);
  CHECK(csv.find("# error_slope=") != std::string::npos);
}

TEST_CASE("verification report round-trip") {
  verify::SuiteResult res = verify::run_suite("constants", 1);
  const std::string json = cli::report_to_json(res);
  std::string err;
  CHECK(cli::validate_report_json(json, &err));
  CHECK(err.empty());

  CHECK_FALSE(cli::validate_report_json("{}", &err));
  CHECK(!err.empty());
  CHECK_FALSE(cli::validate_report_json("[1,2]", &err));
}

TEST_CASE("norms goldens: dirac closed forms and the frozen diag row") {
  // dirac(1/2): every column has a closed form
  const cli::ProblemFile dirac = cli::parse_problem_text(
      R"({"schema":1,"problem":{"example":"dirac","lambda0":0.5}})");
  const cli::Table t = cli::cmd_norms(dirac, {0.0, 0.5}, {1.0});
  REQUIRE(t.rows.size() == 2);
  // nu = 0 row: triple and interp both equal the norm column, byte for byte
  CHECK(t.rows[0][5] == t.rows[0][3]);
  CHECK(t.rows[0][6] == t.rows[0][3]);
  // nu = 1/2 row: triple = lambda0^{-1/2}, interp = N^{-1} lambda0^{-1/2} = 1
  CHECK(std::stod(t.rows[1][5]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::stod(t.rows[1][6]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::stod(t.rows[1][4]) == doctest::Approx(2.0).epsilon(1e-14));

  // diag(50) golden row, frozen from a verified run
  const cli::ProblemFile diag = cli::parse_problem_text(
      R"({"schema":1,"problem":{"example":"diag","n":50}})");
  const std::string csv = cli::table_to_csv(cli::cmd_norms(diag, {0.5}, {1.0}));
  CHECK(csv ==
        "label,nu,gamma,norm,norm_gamma,triple,interp,chain_a,chain_b,chain_c,"
        "chain_d,chain_e,equiv,sandwich_pass\n"
        "diag(50),0.5,1,1.0962941499273475,2.1211330317378549,1.0962941499273475,"
        "0.82867623521892353,0.58596258533143941,1.0962941499273475,"
        "1.1719251706628786,1.2748069397448107,2.1211330317378549,"
        "0.82867623521892353,true\n");
}

TEST_CASE("sweep width does not change output bytes") {
  const cli::ProblemFile pf = cli::parse_problem_text(kInlineProblem);
  setenv("REGRATES_THREADS", "1", 1);
  const std::string one =
      cli::table_to_csv(cli::cmd_rates(pf, "tikhonov", {0.0, 0.3, 0.7, 1.0}, 1, 0.0, 0.0));
  setenv("REGRATES_THREADS", "4", 1);
  const std::string four =
      cli::table_to_csv(cli::cmd_rates(pf, "tikhonov", {0.0, 0.3, 0.7, 1.0}, 1, 0.0, 0.0));
  unsetenv("REGRATES_THREADS");
  CHECK(one == four);
}

TEST_CASE("format_value round-trips doubles") {
  for (double v : {1.0 / 3.0, 1e-300, 123456.789, 0.1, 2.0 / 3.0}) {
    const std::string s = cli::format_value(v);
    CHECK(std::stod(s) == v);
  }
}
