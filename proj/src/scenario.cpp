#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "hardy/checks.hpp"
#include "hardy/errors.hpp"

namespace hardy::lab {
namespace {

const char* const kModules[] = {"all", "circlefft", "blaschke", "factorize", "condexp",
                                "xp",  "projector", "finitelab", "cli"};

void Schema(bool ok, const std::string& msg) {
  if (!ok) throw ConfigurationError("scenario: " + msg);
}

CheckRequest ParseCheck(const json& item) {
  CheckRequest req;
  if (item.is_string()) {
    req.name = item.get<std::string>();
  } else {
    Schema(item.is_object(), "each check must be a name or an object");
    for (const auto& [key, value] : item.items()) {
      Schema(key == "name" || key == "tolerance" || key == "params", "check has unknown key \"" + key + "\"");
    }
    Schema(item.contains("name") && item["name"].is_string(), "check needs a string \"name\"");
    req.name = item["name"].get<std::string>();
    if (item.contains("tolerance")) {
      Schema(item["tolerance"].is_number(), "tolerance of " + req.name + " must be a number");
      const double t = item["tolerance"].get<double>();
      Schema(std::isfinite(t) && t > 0.0, "tolerance of " + req.name + " must be positive");
      req.tolerance = t;
    }
    if (item.contains("params")) {
      Schema(item["params"].is_object(), "params of " + req.name + " must be an object");
      req.params = item["params"];
    }
  }
  Schema(find_check(req.name) != nullptr, "unknown check \"" + req.name + "\"");
  return req;
}

std::string Comparison(Direction d) { return d == Direction::kAtMost ? "<=" : ">="; }

CheckOutcome Execute(const CheckInfo& info, const CheckRequest& req, const Scenario& sc, std::uint64_t seed,
                     std::size_t grid, double tol_scale) {
  CheckOutcome out;
  out.name = info.name;
  out.reference = info.reference;
  out.direction = info.direction;
  out.tolerance = req.tolerance.value_or(info.tolerance) * tol_scale;
  CheckContext ctx;
  ctx.grid_size = grid;
  ctx.master_seed = seed;
  ctx.seed = derive_seed(seed, info.name);
  ctx.inputs = sc.inputs;
  ctx.params = req.params;
  try {
    Measurement m = info.run(ctx);
    out.residual = m.residual;
    out.baselines = std::move(m.baselines);
    const bool ok = std::isfinite(out.residual) && (info.direction == Direction::kAtMost ? out.residual <= out.tolerance
                                                                                         : out.residual >= out.tolerance);
    out.verdict = ok ? "pass" : "fail";
  } catch (const RejectedInput& e) {
    out.residual = std::nan("");
    out.verdict = "rejected-input";
    out.message = e.what();
  } catch (const std::exception& e) {
    out.residual = std::nan("");
    out.verdict = "error";
    out.message = e.what();
  }
  return out;
}

json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

bool RunResult::pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.verdict == "pass"; });
}

Scenario parse_scenario(const json& doc) {
  Schema(doc.is_object(), "top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    Schema(key == "name" || key == "module" || key == "seed" || key == "grid_size" || key == "inputs" ||
               key == "checks",
           "unknown key \"" + key + "\"");
  }
  Scenario sc;
  Schema(doc.contains("name") && doc["name"].is_string(), "needs a string \"name\"");
  sc.name = doc["name"].get<std::string>();
  if (doc.contains("module")) {
    Schema(doc["module"].is_string(), "\"module\" must be a string");
    sc.module = doc["module"].get<std::string>();
    Schema(std::find(std::begin(kModules), std::end(kModules), sc.module) != std::end(kModules),
           "unknown module \"" + sc.module + "\"");
  }
  if (doc.contains("seed")) {
    Schema(doc["seed"].is_number_unsigned(), "\"seed\" must be a nonnegative integer");
    sc.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("grid_size")) {
    Schema(doc["grid_size"].is_number_unsigned(), "\"grid_size\" must be a positive integer");
    sc.grid_size = doc["grid_size"].get<std::size_t>();
  }
  try {
    require_grid_size(sc.grid_size);
  } catch (const ConfigurationError& e) {
    Schema(false, e.what());
  }
  if (doc.contains("inputs")) {
    Schema(doc["inputs"].is_object(), "\"inputs\" must be an object");
    for (const auto& [key, value] : doc["inputs"].items()) {
      Schema(key == "pairs", "inputs has unknown key \"" + key + "\"");
      Schema(value.is_array() && !value.empty(), "inputs.pairs must be a nonempty array");
      for (const auto& spec : value) {
        try {
          validate_pair_spec(spec);
        } catch (const ConfigurationError& e) {
          Schema(false, e.what());
        }
      }
    }
    sc.inputs = doc["inputs"];
  }
  Schema(doc.contains("checks") && doc["checks"].is_array() && !doc["checks"].empty(),
         "needs a nonempty \"checks\" array");
  for (const auto& item : doc["checks"]) sc.checks.push_back(ParseCheck(item));
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read scenario " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario full_suite(std::uint64_t seed, std::size_t grid_size) {
  Scenario sc;
  sc.name = "full_suite";
  sc.seed = seed;
  sc.grid_size = grid_size;
  for (const auto& c : catalog()) sc.checks.push_back(CheckRequest{c.name, std::nullopt, json::object()});
  return sc;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  const std::size_t grid = options.grid_size.value_or(scenario.grid_size);
  require_grid_size(grid);
  if (!(options.tol_scale > 0.0) || !std::isfinite(options.tol_scale)) {
    throw ConfigurationError("--tol-scale must be positive");
  }
  const std::optional<std::uint64_t> seed = options.seed ? options.seed : scenario.seed;
  for (const auto& req : scenario.checks) {
    if (find_check(req.name)->randomized && !seed) {
      throw ConfigurationError("check " + req.name + " is randomized and the scenario has no seed");
    }
  }

  RunResult result;
  result.scenario = scenario.name;
  result.module = scenario.module;
  result.seed = seed.value_or(0);
  result.grid_size = grid;
  result.tol_scale = options.tol_scale;
  result.outcomes.resize(scenario.checks.size());
  auto run_one = [&](std::size_t i) {
    const auto& req = scenario.checks[i];
    result.outcomes[i] = Execute(*find_check(req.name), req, scenario, result.seed, grid, options.tol_scale);
  };
  if (options.parallel) {
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < scenario.checks.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
    std::stable_sort(result.outcomes.begin(), result.outcomes.end(),
                     [](const CheckOutcome& a, const CheckOutcome& b) { return a.name < b.name; });
  } else {
    for (std::size_t i = 0; i < scenario.checks.size(); ++i) run_one(i);
  }
  return result;
}

std::string report_json(const RunResult& result) {
  json checks = json::array();
  json baselines = json::object();
  for (const auto& o : result.outcomes) {
    json c = {{"name", o.name},
              {"reference", o.reference},
              {"residual", Finite(o.residual)},
              {"tolerance", o.tolerance},
              {"comparison", Comparison(o.direction)},
              {"verdict", o.verdict}};
    if (!o.message.empty()) c["message"] = o.message;
    checks.push_back(std::move(c));
    if (!o.baselines.empty()) baselines[o.name] = o.baselines;
  }
  const json doc = {{"fixture", result.scenario},
                    {"module", result.module},
                    {"seed", result.seed},
                    {"grid_size", result.grid_size},
                    {"tol_scale", result.tol_scale},
                    {"checks", checks},
                    {"baselines", baselines},
                    {"pass", result.pass()}};
  return doc.dump(2) + "\n";
}

std::string report_csv(const RunResult& result) {
  std::ostringstream out;
  out << "name,residual,comparison,tolerance,verdict\n";
  char buf[64];
  for (const auto& o : result.outcomes) {
    out << o.name << ',';
    std::snprintf(buf, sizeof buf, "%.16e", o.residual);
    out << buf << ',' << Comparison(o.direction) << ',';
    std::snprintf(buf, sizeof buf, "%.16e", o.tolerance);
    out << buf << ',' << o.verdict << '\n';
  }
  return out.str();
}

}  // namespace hardy::lab
