#pragma once
// Named verification checks, scenarios that select them, and the JSON / CSV
// reports produced by running a scenario.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardy/fixtures.hpp"
#include "json.hpp"

namespace hardy::lab {

using json = nlohmann::json;

// A check passes when residual <= tolerance (kAtMost) or, for falsification
// checks, residual >= tolerance (kAtLeast).
enum class Direction { kAtMost, kAtLeast };

struct CheckContext {
  std::size_t grid_size = 4096;
  std::uint64_t seed = 0;         // derived from the master seed and the check name
  std::uint64_t master_seed = 0;  // for work shared between checks
  json inputs = json::object();  // scenario inputs, e.g. "pairs"
  json params = json::object();  // per-check parameters
};

struct Measurement {
  double residual = 0.0;
  json baselines = json::object();
};

struct CheckInfo {
  std::string name;
  std::string module;
  std::string reference;
  std::string summary;
  double tolerance = 0.0;
  Direction direction = Direction::kAtMost;
  bool randomized = false;
  std::function<Measurement(const CheckContext&)> run;
};

// Catalog in declaration order.
const std::vector<CheckInfo>& catalog();
const CheckInfo* find_check(const std::string& name);

struct CheckRequest {
  std::string name;
  std::optional<double> tolerance;
  json params = json::object();
};

struct Scenario {
  std::string name;
  std::string module = "all";
  std::optional<std::uint64_t> seed;
  std::size_t grid_size = 4096;
  json inputs = json::object();
  std::vector<CheckRequest> checks;
};

// Throws ConfigurationError with a diagnostic on any schema violation:
// unknown keys or check names, nonpositive tolerances, grid sizes that are
// not powers of two, malformed pair specs.
Scenario parse_scenario(const json& doc);
// Also throws ConfigurationError when the file cannot be read or parsed.
Scenario load_scenario(const std::string& path);
// Every catalog check with its default tolerance.
Scenario full_suite(std::uint64_t seed, std::size_t grid_size);

struct RunOptions {
  std::optional<std::size_t> grid_size;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;
  bool parallel = false;
};

struct CheckOutcome {
  std::string name;
  std::string reference;
  Direction direction = Direction::kAtMost;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string verdict;  // pass, fail, rejected-input, error
  std::string message;
  json baselines = json::object();
};

struct RunResult {
  std::string scenario;
  std::string module;
  std::uint64_t seed = 0;
  std::size_t grid_size = 0;
  double tol_scale = 1.0;
  std::vector<CheckOutcome> outcomes;
  bool pass() const;
};

// Checks run in declaration order, or concurrently with --parallel and then
// ordered by name. Each check draws from a seed derived from the master seed
// and its name, so results do not depend on scheduling. Throws
// ConfigurationError when a randomized check has no seed.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

// Sorted keys, shortest round-trip floats, non-finite values as null.
std::string report_json(const RunResult& result);
// One row per check, floats in %.16e.
std::string report_csv(const RunResult& result);

// Pair specs: {"fixture": name, "p": p} with a name from
// fixtures::standard_pairs, or {"eta": {"zeros": [[re, im], ..],
// "constant": [re, im]} | {"monomial": d}, "phi": {"coefficients": [[re, im],
// ..]}, "p": p}; both accept an optional "name". Throws ConfigurationError on
// malformed specs.
void validate_pair_spec(const json& spec);
// Pairs from inputs["pairs"], or fixtures::acceptance_pairs(n) without it.
std::vector<fixtures::NamedPair> build_pairs(const json& inputs, std::size_t n);

std::uint64_t derive_seed(std::uint64_t master, const std::string& label);

}  // namespace hardy::lab
