// hardy-lab: scenario runner and verification front end.
// Exit codes: 0 all checks pass, 1 a check fails or rejects its input,
// 2 bad arguments or scenario schema.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hardy/checks.hpp"
#include "hardy/errors.hpp"
#include "hardy/finitelab.hpp"
#include "hardy/projector.hpp"
#include "hardy/xp.hpp"

using namespace hardy;
using lab::json;

namespace {

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path);
  out << text;
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("not valid JSON: ") + e.what());
  }
}

Eigen::VectorXd ToVector(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigurationError(std::string(what) + " must be an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigurationError(std::string(what) + " must be an array of numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

json FromVector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// {"space": {"weights": [..]}, "experiment": "theorem31" | "lemma32" | "oracle", ..}
int FiniteLab(const std::string& path, std::optional<std::uint64_t> seed_flag) {
  const json doc = ReadJson(path);
  if (!doc.is_object() || !doc.contains("space") || !doc.contains("experiment")) {
    throw ConfigurationError("finite-lab scenario needs \"space\" and \"experiment\"");
  }
  const auto& sp = doc["space"];
  if (!sp.is_object() || !sp.contains("weights")) throw ConfigurationError("space needs \"weights\"");
  std::vector<double> w;
  for (const auto& v : sp["weights"]) w.push_back(v.get<double>());
  const finite::FiniteSpace space(w);
  const std::string experiment = doc["experiment"].get<std::string>();
  const std::uint64_t seed = seed_flag.value_or(doc.value("seed", std::uint64_t{0}));
  const finite::OracleOptions oracle{doc.value("restarts", 24), doc.value("steps", 400), seed};
  json report = {{"experiment", experiment}, {"seed", seed}, {"n", space.size()}};
  bool pass = true;
  if (experiment == "theorem31") {
    const double p = doc.value("p", 3.0);
    const int trials = doc.value("trials", 20);
    const auto r = finite::theorem31_probe(space, Exponent(p), trials, seed, oracle);
    report["p"] = p;
    report["trials"] = r.trials;
    report["above_one"] = r.above_one;
    report["min_excess"] = r.min_excess;
    report["ce_count"] = r.ce_count;
    report["ce_max_deviation"] = r.ce_max_deviation;
    report["statement"] = r.above_one == r.trials
                              ? "no counterexample found in " + std::to_string(r.trials) + " trials"
                              : "a non-averaging projection reached norm 1";
    pass = r.pass();
  } else if (experiment == "lemma32") {
    if (!doc.contains("f") || !doc.contains("Y")) throw ConfigurationError("lemma32 needs \"f\" and \"Y\"");
    std::vector<Eigen::VectorXd> Y;
    for (const auto& y : doc["Y"]) Y.push_back(ToVector(y, "Y"));
    const auto r = finite::lemma32_check(space, ToVector(doc["f"], "f"), Y, doc.value("trials", 32), seed);
    report["hypothesis_on_basis"] = r.hypothesis_on_basis;
    report["hypothesis"] = r.hypothesis;
    report["conclusion_residual"] = r.conclusion_residual;
    report["enumeration_agrees"] = r.enumeration_agrees;
    report["counterexample"] = r.counterexample;
    if (r.hypothesis_witness) report["hypothesis_witness"] = FromVector(*r.hypothesis_witness);
    pass = r.pass();
  } else if (experiment == "oracle") {
    if (!doc.contains("matrix")) throw ConfigurationError("oracle needs \"matrix\"");
    const auto n = static_cast<Eigen::Index>(space.size());
    Eigen::MatrixXd m(n, n);
    const auto& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != space.size()) throw ConfigurationError("matrix must be n x n");
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = ToVector(rows[static_cast<std::size_t>(i)], "matrix row").transpose();
    const double p = doc.value("p", 3.0);
    report["p"] = p;
    report["norm"] = finite::oracle_pnorm(m, Exponent(p), space, oracle);
  } else {
    throw ConfigurationError("unknown experiment \"" + experiment + "\"");
  }
  report["pass"] = pass;
  std::cout << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contractive projections on Hardy spaces: verification runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario file or the full check suite");
  std::string scenario_path, report_path, csv_path;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;
  bool parallel = false, all = false;
  run->add_option("--scenario", scenario_path, "Scenario JSON file");
  run->add_flag("--all", all, "Run every catalog check with default tolerances");
  run->add_option("--grid-size", grid, "Grid size N, a power of two");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--report", report_path, "Write the JSON report here (default: stdout)");
  run->add_option("--csv", csv_path, "Also write a CSV report");
  run->add_option("--tol-scale", tol_scale, "Multiply every tolerance, recorded in the report");
  run->add_flag("--parallel", parallel, "Run checks concurrently; the report is ordered by check name");

  auto* list = app.add_subcommand("list-checks", "Print every check with its reference and tolerance");

  auto* validate = app.add_subcommand("validate-pair", "Validate one (eta, phi, p) pair given as JSON");
  std::string pair_path;
  std::size_t pair_grid = 4096;
  validate->add_option("pair", pair_path, "Pair spec JSON file")->required();
  validate->add_option("--grid-size", pair_grid, "Grid size N");

  auto* ce = app.add_subcommand("counterexample", "Even-p projection a + bz + z^{k+1} r -> a + bz");
  int k = 2, M = 0, trials = 8, steps = 200;
  std::size_t ce_grid = 1024;
  std::uint64_t ce_seed = 0;
  ce->add_option("--k", k, "p = 2k");
  ce->add_option("--M", M, "Truncation degree (default k + 6)");
  ce->add_option("--trials", trials, "Restarts of the norm estimate at 2k - 1");
  ce->add_option("--steps", steps, "Ascent sweeps per restart");
  ce->add_option("--grid-size", ce_grid, "Grid size N");
  ce->add_option("--seed", ce_seed, "Seed");

  auto* fl = app.add_subcommand("finite-lab", "Run a finite-space experiment");
  std::string fl_path;
  std::optional<std::uint64_t> fl_seed;
  fl->add_option("--scenario", fl_path, "Finite-lab scenario JSON")->required();
  fl->add_option("--seed", fl_seed, "Seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      if (all == !scenario_path.empty()) throw ConfigurationError("run needs exactly one of --scenario and --all");
      const lab::Scenario sc = all ? lab::full_suite(seed.value_or(0), grid.value_or(4096))
                                   : lab::load_scenario(scenario_path);
      const lab::RunResult result = lab::run_scenario(sc, {grid, seed, tol_scale, parallel});
      const std::string text = lab::report_json(result);
      if (report_path.empty()) {
        std::cout << text;
      } else {
        WriteFile(report_path, text);
      }
      if (!csv_path.empty()) WriteFile(csv_path, lab::report_csv(result));
      for (const auto& o : result.outcomes) {
        std::fprintf(stderr, "%-32s %-14s residual %.3e %s %.1e\n", o.name.c_str(), o.verdict.c_str(), o.residual,
                     o.direction == lab::Direction::kAtMost ? "<=" : ">=", o.tolerance);
      }
      return result.pass() ? 0 : 1;
    }
    if (*list) {
      for (const auto& c : lab::catalog()) {
        std::printf("%-32s %-10s %s %.0e  %s\n", c.name.c_str(), c.module.c_str(),
                    c.direction == lab::Direction::kAtMost ? "<=" : ">=", c.tolerance, c.reference.c_str());
      }
      return 0;
    }
    if (*validate) {
      const json spec = ReadJson(pair_path);
      lab::validate_pair_spec(spec);
      const auto pairs = lab::build_pairs(json{{"pairs", json::array({spec})}}, pair_grid);
      const ValidationReport& r = pairs.front().pair.report();
      const json out = {{"pair", pairs.front().name},
                        {"eta_at_origin", r.eta_at_origin},
                        {"norm_defect", r.norm_defect},
                        {"h2_membership", r.h2_membership},
                        {"eta_orthogonality", r.eta_orthogonality},
                        {"verdict", r.pass() ? "pass" : "fail"}};
      std::cout << out.dump(2) << "\n";
      return r.pass() ? 0 : 1;
    }
    if (*ce) {
      if (M == 0) M = k + 6;
      const auto r = counterexample_even(k, M, Exponent(2.0 * k), ce_grid, OpnormOptions{trials, steps, ce_seed});
      const bool pass = r.certificate.pass && r.z_in_range && r.identity_defect > 1e-3 && r.opnorm_odd > 1.0;
      const json out = {{"k", r.k},
                        {"M", r.M},
                        {"p", r.p},
                        {"certificate_residual", r.certificate.residual},
                        {"certificate_digest", r.certificate.digest},
                        {"z_in_range", r.z_in_range},
                        {"identity_defect", r.identity_defect},
                        {"odd_exponent", r.odd_exponent},
                        {"opnorm_odd", r.opnorm_odd},
                        {"pass", pass}};
      std::cout << out.dump(2) << "\n";
      return pass ? 0 : 1;
    }
    if (*fl) return FiniteLab(fl_path, fl_seed);
  } catch (const ConfigurationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const RejectedInput& e) {
    std::fprintf(stderr, "rejected input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
