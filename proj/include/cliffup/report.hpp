#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace cliffup {

namespace flag {
// Flags exempt a report from the pass/fail contract.
inline constexpr const char* experimental_mu = "experimental-mu";
inline constexpr const char* hypothesis_violated = "hypothesis-violated";
inline constexpr const char* hypothesis_weak = "hypothesis-weak";
inline constexpr const char* vacuous = "vacuous";
}  // namespace flag

namespace label {
// Labels are informational only.
inline constexpr const char* exact_lattice = "exact-lattice";
inline constexpr const char* continuum = "continuum";
inline constexpr const char* eta_approximate = "eta-approximate";
}  // namespace label

/// Echo of the quantities an inequality instance was evaluated with.
struct InputsDigest {
  std::string signature;
  std::string mu;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> measure_T;
  std::optional<double> measure_Omega;
  std::optional<double> epsilon_T;
  std::optional<double> epsilon_Omega;
};

struct BoundReport {
  std::string name;
  std::string scenario;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  // Empty when the hypotheses fail and no verdict is issued.
  std::optional<bool> holds;
  double tolerance = 1e-9;
  InputsDigest inputs;
  std::vector<std::string> flags;
  std::vector<std::string> labels;
  // Right side with the Parseval (2,2) endpoint norm (2pi)^{n/2} in place of
  // (2pi)^n inside the Hausdorff-Young constant. Reported, never judged.
  std::optional<double> rhs_tight;

  /// holds <=> slack >= -tolerance * max(|lhs|, |rhs|, 1).
  void decide_by_slack() {
    slack = rhs - lhs;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    holds = slack >= -tolerance * scale;
  }

  void decide(bool verdict) {
    slack = rhs - lhs;
    holds = verdict;
  }

  void withhold_verdict(const char* why) {
    slack = rhs - lhs;
    holds.reset();
    add_flag(why);
  }

  void add_flag(const char* f) {
    if (!has_flag(f)) flags.emplace_back(f);
  }
  void add_label(const char* l) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.emplace_back(l);
  }
  bool has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
  }

  /// Flagged reports never count against the exit status.
  bool exempt() const { return !flags.empty(); }

  /// Contributes to failure: unflagged and not holding.
  bool fails() const { return !exempt() && !holds.value_or(false); }
};

}  // namespace cliffup
