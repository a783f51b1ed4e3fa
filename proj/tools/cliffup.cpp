// cliffup: evaluate Clifford Fourier uncertainty inequalities on sampled signals.
//
//   cliffup run <scenario.json> [--out report.json] [--csv report.csv] [--tol-override k=v]...
//   cliffup validate <scenario.json>
//   cliffup gen-signal <spec.json> --out field.json
//
// Exit status: 0 when every unflagged report holds, 1 when one fails,
// 2 for invalid input.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "cliffup/io.hpp"
#include "cliffup/scenario.hpp"

namespace {

constexpr int kInvalidInput = 2;

void print_summary(std::ostream& out, const std::vector<cliffup::BoundReport>& reports) {
  for (const auto& r : reports) {
    const char* verdict = !r.holds ? "n/a " : (*r.holds ? "ok  " : "FAIL");
    out << verdict << "  " << r.scenario << "  " << r.name << "  lhs=" << cliffup::io::format_double(r.lhs)
        << " rhs=" << cliffup::io::format_double(r.rhs);
    for (const auto& f : r.flags) out << " [" << f << "]";
    out << "\n";
  }
}

int run(const std::string& scenario_path, const std::string& out_path, const std::string& csv_path,
        const std::vector<std::string>& overrides) {
  auto suite = cliffup::load_suite(scenario_path);
  for (auto& s : suite)
    for (const auto& o : overrides) cliffup::apply_tolerance_override(s.tolerances, o);
  const auto reports = cliffup::run_suite(suite);

  const std::string json_text = cliffup::io::reports_to_json(reports).dump(2) + "\n";
  if (out_path.empty())
    std::cout << json_text;
  else
    cliffup::io::write_text_file(out_path, json_text);
  if (!csv_path.empty()) {
    std::ostringstream csv;
    cliffup::io::write_reports_csv(csv, reports);
    cliffup::io::write_text_file(csv_path, csv.str());
  }
  print_summary(out_path.empty() ? std::cerr : std::cout, reports);
  return cliffup::exit_status(reports);
}

int validate(const std::string& scenario_path) {
  const auto suite = cliffup::load_suite(scenario_path);
  for (const auto& s : suite) {
    try {
      cliffup::validate_scenario(s);
    } catch (const cliffup::ScenarioError& e) {
      throw cliffup::ScenarioError(s.name + "." + e.field(),
                                   std::string(e.what()).substr(e.field().size() + 2));
    }
  }
  std::cout << "valid: " << suite.size() << " scenario(s)\n";
  return 0;
}

int gen_signal(const std::string& spec_path, const std::string& out_path) {
  const auto doc = cliffup::io::read_json_file(spec_path);
  const std::filesystem::path base = std::filesystem::path(spec_path).parent_path();
  if (!doc.contains("signature")) throw cliffup::ScenarioError("signature", "is required");
  cliffup::Signature sig;
  try {
    sig = cliffup::io::signature_from_json(doc.at("signature"));
  } catch (const std::exception& e) {
    throw cliffup::ScenarioError("signature", e.what());
  }
  if (!doc.contains("grid")) throw cliffup::ScenarioError("grid", "is required");
  if (!doc.contains("signal")) throw cliffup::ScenarioError("signal", "is required");
  const auto grid = cliffup::parse_grid(doc.at("grid"), sig.n());
  const auto spec = cliffup::parse_signal(doc.at("signal"), base);
  cliffup::io::save_field(out_path, cliffup::generate_signal(spec, grid, sig));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford Fourier transform uncertainty-principle checker"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, csv_path, spec_path, field_out;
  std::vector<std::string> overrides;

  auto* run_cmd = app.add_subcommand("run", "Evaluate every check of a scenario or suite");
  run_cmd->add_option("scenario", scenario_path, "Scenario or suite JSON")->required();
  run_cmd->add_option("--out", out_path, "Report JSON (stdout when omitted)");
  run_cmd->add_option("--csv", csv_path, "Report CSV");
  run_cmd->add_option("--tol-override", overrides, "Tolerance override key=value (exact, continuum, bandlimit)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario or suite without evaluating");
  validate_cmd->add_option("scenario", scenario_path, "Scenario or suite JSON")->required();

  auto* gen_cmd = app.add_subcommand("gen-signal", "Write a generated signal as a field document");
  gen_cmd->add_option("spec", spec_path, "JSON with signature, grid and signal")->required();
  gen_cmd->add_option("--out", field_out, "Field output (.json or .csv)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (*run_cmd) return run(scenario_path, out_path, csv_path, overrides);
    if (*validate_cmd) return validate(scenario_path);
    if (*gen_cmd) return gen_signal(spec_path, field_out);
  } catch (const cliffup::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}
