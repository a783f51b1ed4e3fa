#pragma once

// Scenario configuration and batch evaluation.
//
// A scenario document is a single JSON object:
//
//   {
//     "name": "gaussian-cl01",
//     "signature": {"p": 0, "q": 1},
//     "mu": [{"blade": "e1", "coeff": 1.0}],
//     "grid": {"samples_per_axis": 256, "half_width": 10.0},
//     "signal": {"type": "gaussian", "center": [0.0], "width": 1.0},
//     "T": {"box": {"lo": [-4.0], "hi": [4.0]}},
//     "Omega": {"mask_file": "omega.json"},
//     "exponent": 2.0,
//     "eta": 0.01,
//     "checks": ["parseval", "hausdorff_young", "donoho_stark_1"],
//     "tolerances": {"exact": 1e-9}
//   }
//
// A suite is {"defaults": {...}, "scenarios": [...]}; each scenario is
// merged over the defaults key by key. Relative file paths resolve against
// the directory of the document.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cliffup/bounds.hpp"
#include "cliffup/field.hpp"
#include "cliffup/operators.hpp"
#include "cliffup/report.hpp"

namespace cliffup {

/// Invalid configuration; field() names the offending key path.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct BoxSpec {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct RegionSpec {
  std::optional<BoxSpec> box;
  std::filesystem::path mask_file;
};

struct SignalSpec {
  enum class Kind { gaussian, indicator, random, file };
  Kind kind = Kind::gaussian;
  std::vector<double> center;  // gaussian; zeros when empty
  double width = 1.0;          // gaussian
  BoxSpec box;                 // indicator
  std::optional<std::uint64_t> seed;    // random
  int smoothness = 0;                   // random: passes of the [1 2 1]/4 filter per axis
  std::optional<double> envelope_width; // random: optional Gaussian taper
  std::filesystem::path path;           // file
};

struct Scenario {
  std::string name;
  Signature signature;
  std::vector<std::pair<std::string, double>> mu_spec;
  GridSpec grid;
  SignalSpec signal;
  RegionSpec T;
  RegionSpec Omega;
  double exponent = 2.0;
  double eta = 0.01;
  std::vector<std::string> checks;
  Tolerances tolerances;
};

/// Names accepted in "checks".
const std::vector<std::string>& known_checks();

Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Single scenario or suite document.
std::vector<Scenario> parse_suite(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
std::vector<Scenario> load_suite(const std::filesystem::path& path);

/// Builds mu from its blade list; ScenarioError on mu^2 != -1.
SqrtMinusOned make_mu(const Signature& sig,
                      const std::vector<std::pair<std::string, double>>& spec);

Field generate_signal(const SignalSpec& spec, const GridSpec& grid, const Signature& sig);

/// Resolves everything a run needs; throws ScenarioError on the first problem.
void validate_scenario(const Scenario& s);

/// Reports in the order of s.checks.
std::vector<BoundReport> run_scenario(const Scenario& s);

/// Concatenated reports, in suite order.
std::vector<BoundReport> run_suite(const std::vector<Scenario>& suite);

/// "key=value" with key in {exact, continuum, bandlimit}.
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

/// 0 iff every unflagged report holds.
int exit_status(const std::vector<BoundReport>& reports);

/// Parses the "signal" object of a scenario or gen-signal spec.
SignalSpec parse_signal(const nlohmann::json& j, const std::filesystem::path& base_dir,
                        const std::string& where = "signal");

/// Parses a "grid" object given the dimension from the signature.
GridSpec parse_grid(const nlohmann::json& j, int dimension, const std::string& where = "grid");

}  // namespace cliffup
