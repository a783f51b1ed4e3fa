#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cliffup/io.hpp"
#include "cliffup/scenario.hpp"

using namespace cliffup;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "cliffup_test_scenario";
  fs::create_directories(dir);
  return dir;
}

json base_scenario() {
  return json::parse(R"({
    "name": "base",
    "signature": {"p": 0, "q": 1},
    "mu": ["e1"],
    "grid": {"samples_per_axis": 128, "half_width": 8.0},
    "signal": {"type": "gaussian", "center": [0.0], "width": 1.0},
    "T": {"box": {"lo": [-3.0], "hi": [3.0]}},
    "Omega": {"box": {"lo": [-3.0], "hi": [3.0]}},
    "exponent": 2.0,
    "checks": ["parseval", "hausdorff_young", "donoho_stark_1"]
  })");
}

std::string field_of(const json& doc) {
  try {
    validate_scenario(parse_scenario(doc));
  } catch (const ScenarioError& e) {
    return e.field();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& stderr_to = {}) {
  std::string cmd = std::string("\"") + CLIFFUP_CLI_PATH + "\" " + args + " > /dev/null";
  cmd += stderr_to.empty() ? " 2>/dev/null" : " 2>\"" + stderr_to.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse errors name the offending field") {
  CHECK(field_of(base_scenario()) == "");

  auto with = [](const char* key, json value) {
    json d = base_scenario();
    d[key] = std::move(value);
    return d;
  };
  auto without = [](const char* key) {
    json d = base_scenario();
    d.erase(key);
    return d;
  };
  CHECK(field_of(without("signature")) == "scenario.signature");
  CHECK(field_of(without("checks")) == "scenario.checks");
  CHECK(field_of(with("signature", {{"p", 0}, {"q", -1}})) == "signature");
  CHECK(field_of(with("signature", {{"p", 0}, {"q", "one"}})) == "signature.q");
  CHECK(field_of(with("grid", {{"samples_per_axis", 127}, {"half_width", 8.0}})) == "grid");
  CHECK(field_of(with("grid", {{"samples_per_axis", 128}})) == "grid.half_width");
  CHECK(field_of(with("checks", json::array())) == "checks");
  CHECK(field_of(with("checks", {"parseval", "uncertainty"})) == "checks[1]");
  CHECK(field_of(with("mu", {"e3"})) == "mu[0].blade");
  CHECK(field_of(with("signal", {{"type", "random"}})) == "signal.seed");
  CHECK(field_of(with("signal", {{"type", "gaussian"}, {"width", 0.0}})) == "signal.width");
  CHECK(field_of(with("signal", {{"type", "chirp"}})) == "signal.type");
  CHECK(field_of(with("T", {{"box", {{"lo", {0.0}}}}})) == "T.box.hi");
  CHECK(field_of(with("Omega", json::object())) == "Omega");
  CHECK(field_of(with("Omega", {{"mask_file", "/nonexistent/mask.json"}})) == "Omega.mask_file");
  CHECK(field_of(with("exponent", 2.5)) == "exponent");
  CHECK(field_of(with("exponent", 1.0)) == "exponent");
  CHECK(field_of(with("tolerances", {{"loose", 1.0}})) == "tolerances.loose");

  json support = with("checks", {"support_bound"});
  support["eta"] = 1.5;
  CHECK(field_of(support) == "eta");

  json closed = with("checks", {"gaussian_closed_form"});
  closed["signal"] = {{"type", "indicator"}, {"box", {{"lo", {-1.0}}, {"hi", {1.0}}}}};
  CHECK(field_of(closed) == "checks");

  const json suite = {{"defaults", base_scenario()},
                      {"scenarios", {{{"name", "ok"}}, {{"name", "bad"}, {"exponent", "x"}}}}};
  try {
    parse_suite(suite);
    FAIL("expected a ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field() == "scenarios[1].exponent");
  }
}

TEST_CASE("mu that does not square to -1 is rejected with the measured square") {
  json d = base_scenario();
  d["signature"] = {{"p", 1}, {"q", 1}};
  d["mu"] = {"e12"};
  d["grid"] = {{"samples_per_axis", 8}, {"half_width", 2.0}};
  d["T"] = {{"box", {{"lo", {-1.0, -1.0}}, {"hi", {1.0, 1.0}}}}};
  d["Omega"] = d["T"];
  d["signal"] = {{"type", "gaussian"}};
  try {
    validate_scenario(parse_scenario(d));
    FAIL("expected a ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field() == "mu");
    CHECK(std::string(e.what()).find("mu*mu = 1 ") != std::string::npos);
  }
  CHECK_NOTHROW(make_mu(Signature(1, 1), {{"e2", 1.0}}));
  CHECK_NOTHROW(make_mu(Signature(0, 2), {{"e1", 0.6}, {"e12", 0.8}}));
}

TEST_CASE("generate_signal") {
  const Signature sig(0, 1);
  const GridSpec g(1, 64, 4.0);

  SignalSpec gauss;
  const Field f = generate_signal(gauss, g, sig);
  CHECK(f.values()(32, 0) == 1.0);
  CHECK(f.values().col(1).isZero(0.0));
  CHECK(f.values().col(0).maxCoeff() == 1.0);

  SignalSpec ind;
  ind.kind = SignalSpec::Kind::indicator;
  ind.box = {{-4.0}, {4.0}};
  CHECK((generate_signal(ind, g, sig).values().col(0).array() == 1.0).all());

  SignalSpec rnd;
  rnd.kind = SignalSpec::Kind::random;
  rnd.seed = 42;
  rnd.smoothness = 3;
  rnd.envelope_width = 1.5;
  const Field r1 = generate_signal(rnd, g, sig), r2 = generate_signal(rnd, g, sig);
  CHECK(r1.values() == r2.values());
  rnd.seed = 43;
  CHECK(generate_signal(rnd, g, sig).values() != r1.values());
  rnd.seed.reset();
  CHECK_THROWS_AS(generate_signal(rnd, g, sig), ScenarioError);

  gauss.width = -1.0;
  CHECK_THROWS_AS(generate_signal(gauss, g, sig), ScenarioError);

  const fs::path path = scratch_dir() / "signal.json";
  io::save_field(path, r1);
  SignalSpec file;
  file.kind = SignalSpec::Kind::file;
  file.path = path;
  CHECK(generate_signal(file, g, sig).values() == r1.values());
  CHECK_THROWS_AS(generate_signal(file, GridSpec(1, 32, 4.0), sig), ScenarioError);
  file.path = scratch_dir() / "missing.json";
  CHECK_THROWS_AS(generate_signal(file, g, sig), ScenarioError);
}

TEST_CASE("run_scenario: gaussian with three checks") {
  const auto reports = run_scenario(parse_scenario(base_scenario()));
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].name == "parseval");
  CHECK(reports[1].name == "hausdorff_young");
  CHECK(reports[2].name == "donoho_stark_1");
  for (const auto& r : reports) {
    CHECK(r.scenario == "base");
    CHECK(r.holds == true);
    CHECK(r.flags.empty());
  }
  CHECK(exit_status(reports) == 0);
}

TEST_CASE("mask files resolve relative to the document") {
  const fs::path dir = scratch_dir();
  const GridSpec g(1, 128, 8.0);
  const auto W = region_from_box<Domain::frequency>(g, std::vector<double>{-2.0},
                                                    std::vector<double>{2.0});
  io::write_text_file(dir / "omega.json", io::mask_to_json(W).dump());
  json d = base_scenario();
  d["Omega"] = {{"mask_file", "omega.json"}};
  io::write_text_file(dir / "scenario.json", d.dump());
  const auto suite = load_suite(dir / "scenario.json");
  REQUIRE(suite.size() == 1);
  const auto reports = run_scenario(suite[0]);
  CHECK(*reports[2].inputs.measure_Omega == doctest::Approx(W.measure()));
}

TEST_CASE("tolerance overrides") {
  Tolerances tol;
  apply_tolerance_override(tol, "continuum=0.01");
  apply_tolerance_override(tol, "exact=1e-7");
  CHECK(tol.continuum == 0.01);
  CHECK(tol.exact == 1e-7);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "exact"), ScenarioError);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "exact=abc"), ScenarioError);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "exact=-1"), ScenarioError);
  CHECK_THROWS_AS(apply_tolerance_override(tol, "strict=1"), ScenarioError);
}

TEST_CASE("CLI end to end") {
  const fs::path dir = scratch_dir();
  io::write_text_file(dir / "base.json", base_scenario().dump(2));

  const fs::path out1 = dir / "r1.json", out2 = dir / "r2.json", csv = dir / "r1.csv";
  CHECK(run_cli("run \"" + (dir / "base.json").string() + "\" --out \"" + out1.string() +
                "\" --csv \"" + csv.string() + "\"") == 0);
  CHECK(run_cli("run \"" + (dir / "base.json").string() + "\" --out \"" + out2.string() + "\"") == 0);
  CHECK(slurp(out1) == slurp(out2));
  const json report = json::parse(slurp(out1));
  CHECK(report.at("reports").size() == 3);
  CHECK(report.at("summary").at("failing") == 0);
  CHECK(slurp(csv).rfind("scenario,name,", 0) == 0);

  CHECK(run_cli("validate \"" + (dir / "base.json").string() + "\"") == 0);
  CHECK(run_cli("validate \"" + std::string(CLIFFUP_SOURCE_DIR) + "/scenarios/default.json\"") == 0);

  // A continuum tolerance nobody can meet makes the closed-form check fail.
  json strict = base_scenario();
  strict["checks"] = {"gaussian_closed_form"};
  io::write_text_file(dir / "strict.json", strict.dump());
  CHECK(run_cli("run \"" + (dir / "strict.json").string() + "\" --tol-override continuum=1e-15") == 1);
  CHECK(run_cli("run \"" + (dir / "strict.json").string() + "\"") == 0);
  CHECK(run_cli("run \"" + (dir / "strict.json").string() + "\" --tol-override fuzzy=1") == 2);

  json bad_mu = base_scenario();
  bad_mu["signature"] = {{"p", 1}, {"q", 1}};
  bad_mu["mu"] = {"e12"};
  io::write_text_file(dir / "bad_mu.json", bad_mu.dump());
  const fs::path err = dir / "stderr.txt";
  CHECK(run_cli("run \"" + (dir / "bad_mu.json").string() + "\"", err) == 2);
  CHECK(slurp(err).find("mu*mu = 1 ") != std::string::npos);
  CHECK(run_cli("run \"" + (dir / "missing.json").string() + "\"") == 2);
  CHECK(run_cli("frobnicate") == 2);

  // gen-signal writes what generate_signal produces.
  const json spec = {{"signature", {{"p", 0}, {"q", 2}}},
                     {"grid", {{"samples_per_axis", 16}, {"half_width", 3.0}}},
                     {"signal", {{"type", "random"}, {"seed", 5}, {"smoothness", 2}}}};
  io::write_text_file(dir / "spec.json", spec.dump());
  CHECK(run_cli("gen-signal \"" + (dir / "spec.json").string() + "\" --out \"" +
                (dir / "field.json").string() + "\"") == 0);
  SignalSpec s = parse_signal(spec.at("signal"), dir);
  const Field expected = generate_signal(s, GridSpec(2, 16, 3.0), Signature(0, 2));
  CHECK(io::load_field<Domain::time>(dir / "field.json").values() == expected.values());
  CHECK(run_cli("gen-signal \"" + (dir / "spec.json").string() + "\"") == 2);
}
