#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regrates/cli_core.hpp"
#include "regrates/verify.hpp"

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (...) {
      throw regrates::cli::InputError(std::string("cannot parse ") + what + " value '" +
                                      item + "'");
    }
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw regrates::cli::InputError("cannot open output file '" + out_path + "'");
  out << text;
}

std::string render(const regrates::cli::Table& t, const std::string& format) {
  if (format == "csv") return regrates::cli::table_to_csv(t);
  if (format == "json") return regrates::cli::table_to_json(t);
  throw regrates::cli::InputError("format must be csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regrates: spectral norms, regularization errors and convergence-rate "
               "verification on discrete spectral measures"};
  app.require_subcommand(1);

  std::string problem_path, out_path, format = "csv", suite = "all";
  std::string method, nu_list, gamma_list, delta_list;
  int k = 0;  // 0 = use the problem file's method block
  double sigma = 0.0, tau = 0.0, r = 0.0;
  std::uint64_t seed = 1;

  auto* norms = app.add_subcommand("norms", "norm and embedding-chain table");
  norms->add_option("--problem", problem_path, "problem JSON file")->required();
  norms->add_option("--out", out_path, "output file (default stdout)");
  norms->add_option("--format", format, "csv or json");
  norms->add_option("--nu", nu_list, "comma-separated nu values");
  norms->add_option("--gamma", gamma_list, "comma-separated gamma values");

  auto* rates = app.add_subcommand("rates", "rate-functional suprema and bounds");
  rates->add_option("--problem", problem_path, "problem JSON file")->required();
  rates->add_option("--out", out_path, "output file (default stdout)");
  rates->add_option("--format", format, "csv or json");
  rates->add_option("--method", method, "tikhonov or landweber");
  rates->add_option("--nu", nu_list, "comma-separated nu values");
  rates->add_option("--k", k, "Tikhonov fold count");
  rates->add_option("--sigma", sigma, "Landweber step (default 1/||T*T||)");
  rates->add_option("--r", r, "Landweber smoothing exponent r");

  auto* noisy = app.add_subcommand("noisy", "noise sweeps with parameter choice rules");
  noisy->add_option("--problem", problem_path, "problem JSON file")->required();
  noisy->add_option("--out", out_path, "output file (default stdout)");
  noisy->add_option("--format", format, "csv or json");
  noisy->add_option("--method", method, "tikhonov (a priori) or landweber (discrepancy)");
  noisy->add_option("--deltas", delta_list, "comma-separated noise levels");
  noisy->add_option("--tau", tau, "discrepancy threshold (> 1)");
  noisy->add_option("--sigma", sigma, "Landweber step (default 1/||T*T||)");
  noisy->add_option("--seed", seed, "noise seed");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "constants, propositions, examples or all");
  verify->add_option("--seed", seed, "seed for the randomized batteries");
  verify->add_option("--out", out_path, "JSON report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(verify)) {
      const regrates::verify::SuiteResult res = regrates::verify::run_suite(suite, seed);
      for (const auto& c : res.checks) {
        std::printf("[%s] %-55s lhs=%.10g rhs=%.10g tol=%.3g\n",
                    c.pass ? "PASS" : "FAIL", c.id.c_str(), c.lhs, c.rhs, c.tolerance);
      }
      std::printf("%s: %d/%zu checks passed\n", res.suite.c_str(),
                  static_cast<int>(res.checks.size()) - res.failed(), res.checks.size());
      if (!out_path.empty()) {
        write_output(regrates::cli::report_to_json(res), out_path);
      }
      return res.pass() ? 0 : 1;
    }

    const regrates::cli::ProblemFile pf = regrates::cli::load_problem_file(problem_path);

    if (app.got_subcommand(norms)) {
      const auto t = regrates::cli::cmd_norms(pf, parse_list(nu_list, "--nu"),
                                              parse_list(gamma_list, "--gamma"));
      write_output(render(t, format), out_path);
      return 0;
    }
    if (app.got_subcommand(rates)) {
      std::string m = method.empty() ? pf.method.kind : method;
      const auto t = regrates::cli::cmd_rates(
          pf, m, parse_list(nu_list, "--nu"), k != 0 ? k : pf.method.k,
          sigma > 0.0 ? sigma : pf.method.sigma, r);
      write_output(render(t, format), out_path);
      return 0;
    }
    if (app.got_subcommand(noisy)) {
      regrates::cli::ProblemFile pf2 = pf;
      if (!delta_list.empty()) pf2.noise.deltas = parse_list(delta_list, "--deltas");
      for (double d : pf2.noise.deltas) {
        if (!(d >= 0.0)) throw regrates::cli::InputError("noise levels must be >= 0");
      }
      const std::string m = method.empty() ? pf.method.kind : method;
      const double use_tau = tau > 0.0 ? tau : pf.method.tau;
      const double use_sigma = sigma > 0.0 ? sigma : pf.method.sigma;
      const std::uint64_t use_seed = seed != 1 ? seed : pf.noise.seed;
      const auto t = regrates::cli::cmd_noisy(pf2, m, use_tau, use_sigma, use_seed);
      write_output(render(t, format), out_path);
      return 0;
    }
  } catch (const regrates::cli::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
