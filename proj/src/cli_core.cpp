#include "regrates/cli_core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regrates/builtin.hpp"
#include "regrates/filters.hpp"
#include "regrates/interp.hpp"
#include "regrates/parallel.hpp"
#include "regrates/rates.hpp"

namespace regrates::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("problem file: field '" + where + "': " + what);
}

double need_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

long need_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

SpectralProblem parse_problem_block(const json& j) {
  if (!j.is_object()) fail("problem", "expected an object");
  if (j.contains("atoms")) {
    const json& atoms = j.at("atoms");
    if (!atoms.is_array()) fail("problem.atoms", "expected an array of [lambda, c] pairs");
    std::vector<double> lambdas, coeffs;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const json& a = atoms[i];
      const std::string where = "problem.atoms[" + std::to_string(i) + "]";
      if (!a.is_array() || a.size() != 2) fail(where, "expected [lambda, c]");
      lambdas.push_back(need_number(a[0], where + "[0]"));
      coeffs.push_back(need_number(a[1], where + "[1]"));
    }
    try {
      return SpectralProblem::from_element(
          SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs)),
          j.value("label", std::string("inline")));
    } catch (const std::invalid_argument& e) {
      fail("problem.atoms", e.what());
    }
  }
  if (!j.contains("example")) fail("problem", "need either 'atoms' or 'example'");
  const std::string kind = j.at("example").get<std::string>();
  try {
    if (kind == "diag") return build(ExampleId::diag(need_integer(j.at("n"), "problem.n")));
    if (kind == "dirac") {
      return build(ExampleId::dirac(need_number(j.at("lambda0"), "problem.lambda0")));
    }
    if (kind == "powerlaw") {
      return build(ExampleId::powerlaw(need_number(j.at("nu"), "problem.nu"),
                                       need_integer(j.at("atoms"), "problem.atoms")));
    }
    if (kind == "bvp_sign") {
      return build(ExampleId::bvp_sign(need_integer(j.at("n"), "problem.n")));
    }
  } catch (const json::exception& e) {
    fail("problem", e.what());
  } catch (const std::invalid_argument& e) {
    fail("problem", e.what());
  }
  fail("problem.example", "unknown example '" + kind +
                              "' (expected diag, dirac, powerlaw or bvp_sign)");
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  if (!j.is_object()) throw InputError("problem file: top level must be an object");

  ProblemFile pf;
  pf.schema = j.value("schema", 1);
  if (pf.schema != 1) fail("schema", "unsupported schema version");
  if (!j.contains("problem")) fail("problem", "missing");
  pf.problem = parse_problem_block(j.at("problem"));
  if (j.contains("label")) pf.problem.label = j.at("label").get<std::string>();

  if (j.contains("prior")) {
    const json& prior = j.at("prior");
    if (!prior.is_array()) fail("prior", "expected an array of coefficients");
    for (std::size_t i = 0; i < prior.size(); ++i) {
      pf.prior.push_back(need_number(prior[i], "prior[" + std::to_string(i) + "]"));
    }
    if (pf.prior.size() != pf.problem.element.size()) {
      fail("prior", "length must match the atom count");
    }
  }

  if (j.contains("noise")) {
    pf.has_noise = true;
    const json& nz = j.at("noise");
    if (!nz.is_object()) fail("noise", "expected an object");
    if (nz.contains("deltas")) {
      pf.noise.deltas.clear();
      for (std::size_t i = 0; i < nz.at("deltas").size(); ++i) {
        const double d = need_number(nz.at("deltas")[i], "noise.deltas");
        if (!(d >= 0.0)) fail("noise.deltas", "noise levels must be >= 0");
        pf.noise.deltas.push_back(d);
      }
      if (pf.noise.deltas.empty()) fail("noise.deltas", "need at least one level");
    }
    if (nz.contains("strategy")) {
      const std::string s = nz.at("strategy").get<std::string>();
      if (s == "worst-aligned") {
        pf.noise.strategy = NoiseStrategy::worst_aligned;
      } else if (s == "random") {
        pf.noise.strategy = NoiseStrategy::random;
      } else {
        fail("noise.strategy", "expected 'worst-aligned' or 'random'");
      }
    }
    if (nz.contains("seed")) {
      pf.noise.seed = static_cast<std::uint64_t>(need_integer(nz.at("seed"), "noise.seed"));
    }
  }

  if (j.contains("method")) {
    const json& m = j.at("method");
    if (!m.is_object()) fail("method", "expected an object");
    pf.method.kind = m.value("kind", std::string("tikhonov"));
    if (pf.method.kind != "tikhonov" && pf.method.kind != "landweber" &&
        pf.method.kind != "cutoff") {
      fail("method.kind", "expected tikhonov, landweber or cutoff");
    }
    if (m.contains("k")) {
      pf.method.k = static_cast<int>(need_integer(m.at("k"), "method.k"));
      if (pf.method.k < 1) fail("method.k", "must be >= 1");
    }
    if (m.contains("sigma")) pf.method.sigma = need_number(m.at("sigma"), "method.sigma");
    if (m.contains("tau")) {
      pf.method.tau = need_number(m.at("tau"), "method.tau");
      if (!(pf.method.tau > 1.0)) fail("method.tau", "must exceed 1");
    }
    if (m.contains("r")) pf.method.r = need_number(m.at("r"), "method.r");
    if (m.contains("nu")) {
      for (const auto& v : m.at("nu")) pf.method.nus.push_back(need_number(v, "method.nu"));
    }
    if (m.contains("gamma")) {
      for (const auto& v : m.at("gamma")) {
        pf.method.gammas.push_back(need_number(v, "method.gamma"));
      }
    }
  }
  return pf;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string table_to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  for (const auto& f : t.footer) {
    out += "# " + f + '\n';
  }
  return out;
}

std::string table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      // keep numeric columns numeric in JSON where they parse as such
      // (non-finite values stay textual: JSON has no inf literal)
      try {
        std::size_t pos = 0;
        const double v = std::stod(row[i], &pos);
        if (pos == row[i].size() && std::isfinite(v)) {
          obj[t.header[i]] = v;
          continue;
        }
      } catch (...) {
      }
      obj[t.header[i]] = row[i];
    }
    rows.push_back(obj);
  }
  json j;
  j["rows"] = rows;
  if (!t.footer.empty()) j["footer"] = t.footer;
  return j.dump(2) + "\n";
}

Table cmd_norms(const ProblemFile& pf, std::vector<double> nus, std::vector<double> gammas) {
  if (nus.empty()) nus = pf.method.nus;
  if (gammas.empty()) gammas = pf.method.gammas;
  if (nus.empty()) nus = {0.0, 0.25, 0.5, 0.75, 1.0};
  if (gammas.empty()) gammas = {1.0};

  Table t;
  t.header = {"label",   "nu",      "gamma",   "norm",      "norm_gamma",
              "triple",  "interp",  "chain_a", "chain_b",   "chain_c",
              "chain_d", "chain_e", "equiv",   "sandwich_pass"};
  const SpectralElement& x = pf.problem.element;
  for (double gamma : gammas) {
    if (!(gamma > 0.0)) throw InputError("gamma values must be positive");
    for (double nu : nus) {
      if (!(nu >= 0.0) || nu > gamma) {
        throw InputError("nu values must satisfy 0 <= nu <= gamma");
      }
      std::vector<std::string> row;
      row.push_back(pf.problem.label);
      row.push_back(format_value(nu));
      row.push_back(format_value(gamma));
      row.push_back(format_value(x.norm()));
      row.push_back(format_value(hilbert_norm(x, gamma)));
      row.push_back(format_value(triple_norm(x, nu).value));
      row.push_back(format_value(interp_norm(x, nu, gamma).value));
      if (nu < gamma) {
        const SandwichReport rep = sandwich_report(x, nu, gamma);
        row.push_back(format_value(rep.a));
        row.push_back(format_value(rep.b));
        row.push_back(format_value(rep.c));
        row.push_back(format_value(rep.d));
        row.push_back(format_value(rep.e));
        row.push_back(format_value(rep.half_norm));
        row.push_back(rep.pass ? "true" : "false");
      } else {
        for (int i = 0; i < 6; ++i) row.push_back("");
        row.push_back("true");
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table cmd_rates(const ProblemFile& pf, const std::string& method, std::vector<double> nus,
                int k, double sigma, double r) {
  if (nus.empty()) nus = pf.method.nus;
  Table t;
  t.header = {"label", "method", "nu", "sup_value", "arg", "lower", "upper", "pass"};
  const SpectralElement& x = pf.problem.element;
  std::vector<RateReport> reports(nus.size());
  if (method == "tikhonov") {
    parallel_for(nus.size(), [&](std::size_t i) { reports[i] = tikhonov_rate(x, nus[i], k); });
  } else if (method == "landweber") {
    double s = sigma;
    if (s <= 0.0) s = default_landweber_sigma(pf.problem);
    parallel_for(nus.size(),
                 [&](std::size_t i) { reports[i] = delta_rate(x, nus[i], r, s, 1024); });
  } else if (method == "cutoff") {
    // sup_alpha alpha^{-nu} ||E_[0,alpha) x|| is the tail norm itself, so
    // the bounds collapse to the exact value.
    parallel_for(nus.size(), [&](std::size_t i) {
      const SupResult tn = triple_norm(x, nus[i]);
      RateReport rep;
      rep.nu = nus[i];
      rep.method = FilterSpec::Kind::cutoff;
      rep.sup_value = tn.value;
      rep.arg = tn.arg_sup;
      rep.lower = tn.value;
      rep.upper = tn.value;
      rep.pass = true;
      rep.converged = true;
      reports[i] = rep;
    });
  } else {
    throw InputError("rates: method must be tikhonov, landweber or cutoff");
  }
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const RateReport& rep = reports[i];
    t.rows.push_back({pf.problem.label, method, format_value(rep.nu),
                      format_value(rep.sup_value), format_value(rep.arg),
                      format_value(rep.lower), format_value(rep.upper),
                      rep.pass ? "true" : "false"});
  }
  return t;
}

Table cmd_noisy(const ProblemFile& pf, const std::string& method, double tau,
                double sigma, std::uint64_t seed) {
  Table t;
  t.header = {"delta", "parameter", "error", "residual"};
  NoisySweep sweep;
  if (method == "tikhonov") {
    sweep = tikhonov_apriori_sweep(pf.problem, pf.noise.deltas, pf.noise.strategy, seed);
  } else if (method == "landweber") {
    double s = sigma;
    if (s <= 0.0) s = default_landweber_sigma(pf.problem);
    double nu_assumed = 1.0;  // sizes the iteration cap only
    for (double nu : pf.method.nus) {
      if (nu > 0.0) {
        nu_assumed = nu;
        break;
      }
    }
    sweep = landweber_discrepancy_sweep(pf.problem, nu_assumed, pf.noise.deltas, tau, s,
                                        pf.noise.strategy, seed);
  } else {
    throw InputError("noisy: method must be tikhonov or landweber");
  }
  for (const auto& row : sweep.rows) {
    t.rows.push_back({format_value(row.delta), format_value(row.parameter),
                      format_value(row.error), format_value(row.residual)});
  }
  t.footer.push_back("error_slope=" + format_value(sweep.error_fit.slope) +
                     ",intercept=" + format_value(sweep.error_fit.intercept) +
                     ",residual=" + format_value(sweep.error_fit.residual));
  if (method == "landweber") {
    t.footer.push_back("kbar_slope=" + format_value(sweep.parameter_fit.slope));
  }
  return t;
}

std::string report_to_json(const verify::SuiteResult& res) {
  json checks = json::array();
  for (const auto& c : res.checks) {
    checks.push_back({{"id", c.id},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  json j;
  j["suite"] = res.suite;
  j["seed"] = res.seed;
  j["passed"] = res.pass();
  j["counts"] = {{"total", res.checks.size()}, {"failed", res.failed()}};
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

bool validate_report_json(const std::string& text, std::string* error) {
  const auto set_err = [&](const std::string& m) {
    if (error) *error = m;
    return false;
  };
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return set_err(e.what());
  }
  if (!j.is_object()) return set_err("report must be an object");
  for (const char* key : {"suite", "seed", "passed", "counts", "checks"}) {
    if (!j.contains(key)) return set_err(std::string("missing key '") + key + "'");
  }
  if (!j["checks"].is_array()) return set_err("'checks' must be an array");
  for (const auto& c : j["checks"]) {
    if (!c.is_object() || !c.contains("id") || !c.contains("lhs") || !c.contains("rhs") ||
        !c.contains("tolerance") || !c.contains("pass")) {
      return set_err("each check needs id, lhs, rhs, tolerance, pass");
    }
    if (!c["pass"].is_boolean() || !c["lhs"].is_number() || !c["rhs"].is_number()) {
      return set_err("check field types are wrong");
    }
  }
  return true;
}

}  // namespace regrates::cli
