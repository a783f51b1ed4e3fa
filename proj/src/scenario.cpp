#include "cliffup/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cliffup/io.hpp"
#include "cliffup/transform.hpp"

namespace cliffup {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ScenarioError(where, "must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ScenarioError(where + "." + key, "is required");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ScenarioError(where, "must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ScenarioError(where, "must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ScenarioError(where, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

fs::path resolve(const fs::path& base_dir, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
}

BoxSpec parse_box(const json& j, const std::string& where) {
  BoxSpec box{numbers(require(j, "lo", where), where + ".lo"),
              numbers(require(j, "hi", where), where + ".hi")};
  if (box.lo.size() != box.hi.size())
    throw ScenarioError(where, "lo and hi must have the same length");
  return box;
}

RegionSpec parse_region(const json& j, const fs::path& base_dir, const std::string& where) {
  if (!j.is_object()) throw ScenarioError(where, "must be a JSON object");
  RegionSpec r;
  if (auto it = j.find("box"); it != j.end()) r.box = parse_box(*it, where + ".box");
  if (auto it = j.find("mask_file"); it != j.end()) {
    if (!it->is_string()) throw ScenarioError(where + ".mask_file", "must be a string");
    r.mask_file = resolve(base_dir, it->get<std::string>());
  }
  if (r.box.has_value() == !r.mask_file.empty())
    throw ScenarioError(where, "exactly one of 'box' or 'mask_file' is required");
  return r;
}

template <Domain D>
RegionMask<D> build_region(const RegionSpec& spec, const GridSpec& grid, const std::string& where) {
  if (spec.box) {
    if (static_cast<int>(spec.box->lo.size()) != grid.dimension())
      throw ScenarioError(where + ".box", "corners must have one entry per axis");
    return region_from_box<D>(grid, spec.box->lo, spec.box->hi);
  }
  RegionMask<D> mask;
  try {
    mask = io::load_mask<D>(spec.mask_file);
  } catch (const std::exception& e) {
    throw ScenarioError(where + ".mask_file", e.what());
  }
  if (!(mask.grid() == grid)) throw ScenarioError(where + ".mask_file", "mask grid differs from scenario grid");
  return mask;
}

bool needs_open_exponent(const std::string& check) {
  return check == "qp_composition" || check == "donoho_stark_1" || check == "donoho_stark_2";
}

// Tapers and smooths random samples in place.
void smooth_circular(Eigen::MatrixXd& values, const GridSpec& grid, int passes) {
  const int N = grid.samples_per_axis();
  Eigen::Index stride = grid.point_count();
  for (int l = 0; l < grid.dimension(); ++l) {
    stride /= N;
    for (int pass = 0; pass < passes; ++pass) {
      Eigen::MatrixXd next(values.rows(), values.cols());
      for (Eigen::Index i = 0; i < values.rows(); ++i) {
        const int j = grid.multi_index(i)[l];
        const Eigen::Index prev = i + (((j + N - 1) % N) - j) * stride;
        const Eigen::Index succ = i + (((j + 1) % N) - j) * stride;
        next.row(i) = 0.25 * values.row(prev) + 0.5 * values.row(i) + 0.25 * values.row(succ);
      }
      values = std::move(next);
    }
  }
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BoundReport gaussian_closed_form(const Field& f, const SqrtMinusOned& mu, const SignalSpec& spec,
                                 const Tolerances& tol) {
  const GridSpec& grid = f.grid();
  const int n = grid.dimension();
  const Spectrum F = cft_fast(f, mu);
  const Coordinates xi = grid.coordinates(Domain::frequency);
  const double w = spec.width;
  const double peak = std::pow(2.0 * std::numbers::pi, 0.5 * n) * std::pow(w, n);
  double max_err = 0.0, max_ref = 0.0;
  for (Eigen::Index k = 0; k < xi.rows(); ++k) {
    double r2 = 0.0, shift = 0.0;
    for (int l = 0; l < n; ++l) {
      r2 += xi(k, l) * xi(k, l);
      shift += (spec.center.empty() ? 0.0 : spec.center[l]) * xi(k, l);
    }
    const Multivectord expected = (peak * std::exp(-0.5 * w * w * r2)) * exp_mu(-shift, mu);
    max_err = std::max(max_err, (F.values().row(k).transpose() - expected.coeffs()).norm());
    max_ref = std::max(max_ref, modulus(expected));
  }
  BoundReport r;
  r.name = "gaussian_closed_form";
  r.inputs.signature = f.signature().to_string();
  r.inputs.mu = mu.mu().to_string();
  r.lhs = max_err / max_ref;
  r.rhs = tol.continuum;
  r.tolerance = 0.0;
  r.add_label(label::continuum);
  r.decide_by_slack();
  return r;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "parseval",        "gaussian_closed_form", "hausdorff_young",
      "qp_composition",  "donoho_stark_1",       "donoho_stark_l2",
      "support_bound",   "donoho_stark_2",       "bandlimited_lemma",
      "donoho_stark_bandlimited"};
  return names;
}

GridSpec parse_grid(const json& j, int dimension, const std::string& where) {
  const int N = integer(require(j, "samples_per_axis", where), where + ".samples_per_axis");
  const double L = number(require(j, "half_width", where), where + ".half_width");
  if (auto it = j.find("dimension"); it != j.end() && integer(*it, where + ".dimension") != dimension)
    throw ScenarioError(where + ".dimension", "must equal p + q");
  try {
    return GridSpec(dimension, N, L);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(where, e.what());
  }
}

SignalSpec parse_signal(const json& j, const fs::path& base_dir, const std::string& where) {
  const json& type = require(j, "type", where);
  if (!type.is_string()) throw ScenarioError(where + ".type", "must be a string");
  const std::string kind = type.get<std::string>();
  SignalSpec s;
  if (kind == "gaussian") {
    s.kind = SignalSpec::Kind::gaussian;
    if (auto it = j.find("center"); it != j.end()) s.center = numbers(*it, where + ".center");
    if (auto it = j.find("width"); it != j.end()) s.width = number(*it, where + ".width");
    if (!(s.width > 0.0)) throw ScenarioError(where + ".width", "must be positive");
  } else if (kind == "indicator") {
    s.kind = SignalSpec::Kind::indicator;
    s.box = parse_box(require(j, "box", where), where + ".box");
  } else if (kind == "random") {
    s.kind = SignalSpec::Kind::random;
    const json& seed = require(j, "seed", where);
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
      throw ScenarioError(where + ".seed", "must be a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
    if (auto it = j.find("smoothness"); it != j.end()) s.smoothness = integer(*it, where + ".smoothness");
    if (s.smoothness < 0) throw ScenarioError(where + ".smoothness", "must be >= 0");
    if (auto it = j.find("envelope_width"); it != j.end()) {
      s.envelope_width = number(*it, where + ".envelope_width");
      if (!(*s.envelope_width > 0.0)) throw ScenarioError(where + ".envelope_width", "must be positive");
    }
  } else if (kind == "file") {
    s.kind = SignalSpec::Kind::file;
    const json& p = require(j, "path", where);
    if (!p.is_string()) throw ScenarioError(where + ".path", "must be a string");
    s.path = resolve(base_dir, p.get<std::string>());
  } else {
    throw ScenarioError(where + ".type", "unknown signal type '" + kind +
                                             "' (gaussian, indicator, random, file)");
  }
  return s;
}

Scenario parse_scenario(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ScenarioError("scenario", "must be a JSON object");
  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ScenarioError("name", "must be a string");
    s.name = it->get<std::string>();
  }
  const json& sig = require(doc, "signature", "scenario");
  try {
    s.signature = Signature(integer(require(sig, "p", "signature"), "signature.p"),
                            integer(require(sig, "q", "signature"), "signature.q"));
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("signature", e.what());
  }

  const json& mu = require(doc, "mu", "scenario");
  if (!mu.is_array() || mu.empty()) throw ScenarioError("mu", "must be a non-empty array");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::string where = "mu[" + std::to_string(i) + "]";
    if (mu[i].is_string()) {
      s.mu_spec.emplace_back(mu[i].get<std::string>(), 1.0);
      continue;
    }
    const json& blade = require(mu[i], "blade", where);
    if (!blade.is_string()) throw ScenarioError(where + ".blade", "must be a string");
    s.mu_spec.emplace_back(blade.get<std::string>(),
                           number(require(mu[i], "coeff", where), where + ".coeff"));
  }

  s.grid = parse_grid(require(doc, "grid", "scenario"), s.signature.n());
  s.signal = parse_signal(require(doc, "signal", "scenario"), base_dir);
  s.T = parse_region(require(doc, "T", "scenario"), base_dir, "T");
  s.Omega = parse_region(require(doc, "Omega", "scenario"), base_dir, "Omega");
  if (auto it = doc.find("exponent"); it != doc.end()) s.exponent = number(*it, "exponent");
  if (auto it = doc.find("eta"); it != doc.end()) s.eta = number(*it, "eta");

  const json& checks = require(doc, "checks", "scenario");
  if (!checks.is_array() || checks.empty()) throw ScenarioError("checks", "must be a non-empty array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string where = "checks[" + std::to_string(i) + "]";
    if (!checks[i].is_string()) throw ScenarioError(where, "must be a string");
    const auto name = checks[i].get<std::string>();
    const auto& known = known_checks();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ScenarioError(where, "unknown check '" + name + "'");
    s.checks.push_back(name);
  }

  if (auto it = doc.find("tolerances"); it != doc.end()) {
    if (!it->is_object()) throw ScenarioError("tolerances", "must be a JSON object");
    for (const auto& [key, value] : it->items())
      apply_tolerance_override(s.tolerances,
                               key + "=" + io::format_double(number(value, "tolerances." + key)));
  }
  return s;
}

std::vector<Scenario> parse_suite(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ScenarioError("suite", "must be a JSON object");
  auto list = doc.find("scenarios");
  if (list == doc.end()) return {parse_scenario(doc, base_dir)};
  if (!list->is_array() || list->empty())
    throw ScenarioError("scenarios", "must be a non-empty array");
  json defaults = json::object();
  if (auto it = doc.find("defaults"); it != doc.end()) {
    if (!it->is_object()) throw ScenarioError("defaults", "must be a JSON object");
    defaults = *it;
  }
  std::vector<Scenario> suite;
  for (std::size_t i = 0; i < list->size(); ++i) {
    json merged = defaults;
    if (!(*list)[i].is_object())
      throw ScenarioError("scenarios[" + std::to_string(i) + "]", "must be a JSON object");
    merged.update((*list)[i]);
    try {
      suite.push_back(parse_scenario(merged, base_dir));
    } catch (const ScenarioError& e) {
      throw ScenarioError("scenarios[" + std::to_string(i) + "]." + e.field(),
                          std::string(e.what()).substr(e.field().size() + 2));
    }
    if (suite.back().name.empty()) suite.back().name = "scenario-" + std::to_string(i);
  }
  return suite;
}

std::vector<Scenario> load_suite(const fs::path& path) {
  json doc;
  try {
    doc = io::read_json_file(path);
  } catch (const std::runtime_error& e) {
    throw ScenarioError("file", e.what());
  }
  return parse_suite(doc, path.parent_path());
}

SqrtMinusOned make_mu(const Signature& sig,
                      const std::vector<std::pair<std::string, double>>& spec) {
  Multivectord::Coefficients coeffs = Multivectord::Coefficients::Zero(sig.blade_count());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    try {
      coeffs[parse_blade(spec[i].first, sig.n())] += spec[i].second;
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("mu[" + std::to_string(i) + "].blade", e.what());
    }
  }
  try {
    return SqrtMinusOned(Multivectord(sig, std::move(coeffs)));
  } catch (const NotSqrtMinusOne& e) {
    throw ScenarioError("mu", e.what());
  }
}

Field generate_signal(const SignalSpec& spec, const GridSpec& grid, const Signature& sig) {
  const int n = grid.dimension();
  Field f(grid, sig);
  const Coordinates t = grid.coordinates(Domain::time);
  switch (spec.kind) {
    case SignalSpec::Kind::gaussian: {
      if (!(spec.width > 0.0)) throw ScenarioError("signal.width", "must be positive");
      if (!spec.center.empty() && static_cast<int>(spec.center.size()) != n)
        throw ScenarioError("signal.center", "must have one entry per axis");
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        double r2 = 0.0;
        for (int l = 0; l < n; ++l) {
          const double d = t(i, l) - (spec.center.empty() ? 0.0 : spec.center[l]);
          r2 += d * d;
        }
        f.values()(i, 0) = std::exp(-r2 / (2.0 * spec.width * spec.width));
      }
      break;
    }
    case SignalSpec::Kind::indicator: {
      if (static_cast<int>(spec.box.lo.size()) != n)
        throw ScenarioError("signal.box", "corners must have one entry per axis");
      const TimeRegion box = region_from_box<Domain::time>(grid, spec.box.lo, spec.box.hi);
      for (Eigen::Index i = 0; i < t.rows(); ++i) f.values()(i, 0) = box.contains(i) ? 1.0 : 0.0;
      break;
    }
    case SignalSpec::Kind::random: {
      if (!spec.seed) throw ScenarioError("signal.seed", "is required for random signals");
      std::mt19937_64 rng(*spec.seed);
      for (Eigen::Index i = 0; i < f.values().rows(); ++i)
        for (Eigen::Index c = 0; c < f.values().cols(); ++c)
          f.values()(i, c) = 2.0 * unit_interval(rng) - 1.0;
      smooth_circular(f.values(), grid, spec.smoothness);
      if (spec.envelope_width) {
        const double w = *spec.envelope_width;
        for (Eigen::Index i = 0; i < t.rows(); ++i)
          f.values().row(i) *= std::exp(-t.row(i).squaredNorm() / (2.0 * w * w));
      }
      break;
    }
    case SignalSpec::Kind::file: {
      try {
        f = io::load_field<Domain::time>(spec.path);
      } catch (const std::exception& e) {
        throw ScenarioError("signal.path", e.what());
      }
      if (!(f.grid() == grid)) throw ScenarioError("signal.path", "field grid differs from scenario grid");
      if (!(f.signature() == sig))
        throw ScenarioError("signal.path", "field signature differs from scenario signature");
      break;
    }
  }
  return f;
}

void validate_scenario(const Scenario& s) {
  (void)make_mu(s.signature, s.mu_spec);
  const double a = s.exponent;
  if (!(a >= 1.0 && a <= 2.0)) throw ScenarioError("exponent", "must lie in [1, 2]");
  for (const auto& c : s.checks) {
    if (needs_open_exponent(c) && a == 1.0)
      throw ScenarioError("exponent", "check '" + c + "' requires 1 < exponent <= 2");
    if (c == "support_bound" && !(s.eta > 0.0 && s.eta < 1.0))
      throw ScenarioError("eta", "must lie in (0, 1)");
    if (c == "gaussian_closed_form" && s.signal.kind != SignalSpec::Kind::gaussian)
      throw ScenarioError("checks", "gaussian_closed_form needs a gaussian signal");
  }
  (void)build_region<Domain::time>(s.T, s.grid, "T");
  (void)build_region<Domain::frequency>(s.Omega, s.grid, "Omega");
  const Field f = generate_signal(s.signal, s.grid, s.signature);
  if (!(f.values().cwiseAbs().maxCoeff() > 0.0)) throw ScenarioError("signal", "generates the zero field");
}

std::vector<BoundReport> run_scenario(const Scenario& s) {
  validate_scenario(s);
  const SqrtMinusOned mu = make_mu(s.signature, s.mu_spec);
  const TimeRegion T = build_region<Domain::time>(s.T, s.grid, "T");
  const FrequencyRegion Omega = build_region<Domain::frequency>(s.Omega, s.grid, "Omega");
  const Field f = generate_signal(s.signal, s.grid, s.signature);
  const double a = s.exponent;
  const Tolerances& tol = s.tolerances;

  std::vector<BoundReport> reports;
  for (const auto& c : s.checks) {
    BoundReport r;
    if (c == "parseval")
      r = parseval_check(f, mu, tol);
    else if (c == "gaussian_closed_form")
      r = gaussian_closed_form(f, mu, s.signal, tol);
    else if (c == "hausdorff_young")
      r = hausdorff_young(f, mu, a, tol);
    else if (c == "qp_composition")
      r = qp_composition_bound(f, mu, T, Omega, a, tol);
    else if (c == "donoho_stark_1")
      r = donoho_stark_1(f, mu, T, Omega, a, tol);
    else if (c == "donoho_stark_l2")
      r = donoho_stark_l2_corollary(f, mu, T, Omega, tol);
    else if (c == "support_bound")
      r = support_bound(f, mu, s.eta, tol);
    else if (c == "donoho_stark_2")
      r = donoho_stark_2(f, mu, T, Omega, a, tol);
    else if (c == "bandlimited_lemma")
      r = bandlimited_lemma(band_limit(f, Omega, mu), mu, T, Omega, a, tol);
    else if (c == "donoho_stark_bandlimited")
      r = donoho_stark_bandlimited(f, mu, T, Omega, a, tol);
    else
      throw ScenarioError("checks", "unknown check '" + c + "'");
    r.scenario = s.name;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<BoundReport> run_suite(const std::vector<Scenario>& suite) {
  std::vector<BoundReport> all;
  for (const auto& s : suite) {
    try {
      auto reports = run_scenario(s);
      all.insert(all.end(), reports.begin(), reports.end());
    } catch (const ScenarioError& e) {
      throw ScenarioError(s.name + "." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
  }
  return all;
}

void apply_tolerance_override(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ScenarioError("tolerances", "override '" + assignment + "' must be key=value");
  const std::string key = assignment.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ScenarioError("tolerances." + key, "value must be a number");
  }
  if (!(value >= 0.0) || !std::isfinite(value))
    throw ScenarioError("tolerances." + key, "must be a finite non-negative number");
  if (key == "exact")
    tol.exact = value;
  else if (key == "continuum")
    tol.continuum = value;
  else if (key == "bandlimit")
    tol.bandlimit = value;
  else
    throw ScenarioError("tolerances." + key, "unknown tolerance (exact, continuum, bandlimit)");
}

int exit_status(const std::vector<BoundReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.fails(); })
             ? 1
             : 0;
}

}  // namespace cliffup
