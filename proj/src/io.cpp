#include "cliffup/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cliffup::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) {
  return v ? finite_or_null(*v) : json(nullptr);
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

// strtod rather than stod: subnormals set ERANGE but parse exactly.
double parse_double(const std::string& s) {
  const std::string cell = trim(s);
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size())
    throw std::invalid_argument("csv: malformed number '" + s + "'");
  return v;
}

template <Domain D>
void require_domain(const json& j, const char* what) {
  const auto d = domain_from_string(j.at("domain").get<std::string>());
  if (d != D)
    throw std::invalid_argument(std::string(what) + ": expected domain '" + to_string(D) +
                                "', document has '" + to_string(d) + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_to_json(const GridSpec& grid) {
  return json{{"dimension", grid.dimension()},
              {"samples_per_axis", grid.samples_per_axis()},
              {"half_width", grid.half_width()}};
}

GridSpec grid_from_json(const json& j) {
  return GridSpec(j.at("dimension").get<int>(), j.at("samples_per_axis").get<int>(),
                  j.at("half_width").get<double>());
}

json signature_to_json(const Signature& sig) { return json{{"p", sig.p()}, {"q", sig.q()}}; }

Signature signature_from_json(const json& j) {
  return Signature(j.at("p").get<int>(), j.at("q").get<int>());
}

template <Domain D>
json field_to_json(const Sampled<D>& f) {
  json components = json::object();
  for (Eigen::Index c = 0; c < f.values().cols(); ++c) {
    std::vector<double> column(f.values().col(c).data(),
                               f.values().col(c).data() + f.values().rows());
    components[blade_name(static_cast<BladeIndex>(c))] = std::move(column);
  }
  return json{{"domain", to_string(D)},
              {"signature", signature_to_json(f.signature())},
              {"grid", grid_to_json(f.grid())},
              {"components", std::move(components)}};
}

template <Domain D>
Sampled<D> field_from_json(const json& j) {
  require_domain<D>(j, "field");
  const Signature sig = signature_from_json(j.at("signature"));
  const GridSpec grid = grid_from_json(j.at("grid"));
  Sampled<D> f(grid, sig);
  for (const auto& [name, values] : j.at("components").items()) {
    const BladeIndex blade = parse_blade(name, sig.n());
    const auto column = values.template get<std::vector<double>>();
    if (static_cast<Eigen::Index>(column.size()) != grid.point_count())
      throw std::invalid_argument("field: component '" + name + "' has " +
                                  std::to_string(column.size()) + " samples, expected " +
                                  std::to_string(grid.point_count()));
    for (Eigen::Index i = 0; i < grid.point_count(); ++i)
      f.values()(i, blade) = column[static_cast<std::size_t>(i)];
  }
  return f;
}

template <Domain D>
void write_field_csv(std::ostream& out, const Sampled<D>& f) {
  const GridSpec& grid = f.grid();
  out << "# cliffup-field domain=" << to_string(D) << " p=" << f.signature().p()
      << " q=" << f.signature().q() << " dimension=" << grid.dimension()
      << " samples_per_axis=" << grid.samples_per_axis()
      << " half_width=" << format_double(grid.half_width()) << "\n";
  const char* axis = D == Domain::time ? "t" : "xi";
  for (int l = 0; l < grid.dimension(); ++l) out << axis << (l + 1) << ",";
  for (Eigen::Index c = 0; c < f.values().cols(); ++c)
    out << (c ? "," : "") << blade_name(static_cast<BladeIndex>(c));
  out << "\n";
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const auto idx = grid.multi_index(i);
    for (int l = 0; l < grid.dimension(); ++l) out << format_double(grid.coordinate(D, idx[l])) << ",";
    for (Eigen::Index c = 0; c < f.values().cols(); ++c)
      out << (c ? "," : "") << format_double(f.values()(i, c));
    out << "\n";
  }
}

template <Domain D>
Sampled<D> read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# cliffup-field", 0) != 0)
    throw std::invalid_argument("csv field: missing '# cliffup-field' metadata line");
  std::map<std::string, std::string> meta;
  std::istringstream tokens(line.substr(15));
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos) meta[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end())
      throw std::invalid_argument(std::string("csv field: metadata lacks '") + key + "'");
    return it->second;
  };
  if (domain_from_string(need("domain")) != D)
    throw std::invalid_argument("csv field: domain mismatch");
  const Signature sig(std::stoi(need("p")), std::stoi(need("q")));
  const GridSpec grid(std::stoi(need("dimension")), std::stoi(need("samples_per_axis")),
                      parse_double(need("half_width")));

  if (!std::getline(in, line)) throw std::invalid_argument("csv field: missing header row");
  const auto header = split(trim(line), ',');
  const auto coord_cols = static_cast<std::size_t>(grid.dimension());
  if (header.size() <= coord_cols) throw std::invalid_argument("csv field: no blade columns");
  std::vector<BladeIndex> blades;
  for (std::size_t c = coord_cols; c < header.size(); ++c)
    blades.push_back(parse_blade(trim(header[c]), sig.n()));

  Sampled<D> f(grid, sig);
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (row >= grid.point_count()) throw std::invalid_argument("csv field: too many rows");
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw std::invalid_argument("csv field: row " + std::to_string(row + 1) +
                                  " has the wrong number of columns");
    for (std::size_t c = 0; c < blades.size(); ++c)
      f.values()(row, blades[c]) = parse_double(cells[coord_cols + c]);
    ++row;
  }
  if (row != grid.point_count())
    throw std::invalid_argument("csv field: expected " + std::to_string(grid.point_count()) +
                                " rows, read " + std::to_string(row));
  return f;
}

template <Domain D>
void save_field(const std::filesystem::path& path, const Sampled<D>& f) {
  if (path.extension() == ".csv") {
    std::ostringstream out;
    write_field_csv(out, f);
    write_text_file(path, out.str());
  } else {
    write_text_file(path, field_to_json(f).dump(1) + "\n");
  }
}

template <Domain D>
Sampled<D> load_field(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file '" + path.string() + "'");
    return read_field_csv<D>(in);
  }
  return field_from_json<D>(read_json_file(path));
}

template <Domain D>
json mask_to_json(const RegionMask<D>& region) {
  const GridSpec& grid = region.grid();
  json indices = json::array();
  for (Eigen::Index i = 0; i < grid.point_count(); ++i) {
    if (!region.contains(i)) continue;
    const auto idx = grid.multi_index(i);
    indices.push_back(std::vector<int>(idx.begin(), idx.begin() + grid.dimension()));
  }
  return json{{"domain", to_string(D)}, {"grid", grid_to_json(grid)}, {"indices", indices}};
}

template <Domain D>
RegionMask<D> mask_from_json(const json& j) {
  require_domain<D>(j, "mask");
  const GridSpec grid = grid_from_json(j.at("grid"));
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.point_count()), 0);
  for (const auto& entry : j.at("indices")) {
    const auto idx = entry.get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != grid.dimension())
      throw std::invalid_argument("mask: index arity differs from grid dimension");
    std::array<int, GridSpec::max_dimension> multi{};
    std::copy(idx.begin(), idx.end(), multi.begin());
    mask[static_cast<std::size_t>(grid.linear_index(multi))] = 1;
  }
  return RegionMask<D>(grid, std::move(mask));
}

template <Domain D>
RegionMask<D> load_mask(const std::filesystem::path& path) {
  return mask_from_json<D>(read_json_file(path));
}

json report_to_json(const BoundReport& r) {
  json inputs{{"signature", r.inputs.signature},
              {"mu", r.inputs.mu},
              {"a", optional_number(r.inputs.a)},
              {"b", optional_number(r.inputs.b)},
              {"measure_T", optional_number(r.inputs.measure_T)},
              {"measure_Omega", optional_number(r.inputs.measure_Omega)},
              {"epsilon_T", optional_number(r.inputs.epsilon_T)},
              {"epsilon_Omega", optional_number(r.inputs.epsilon_Omega)}};
  return json{{"scenario", r.scenario},
              {"name", r.name},
              {"lhs", finite_or_null(r.lhs)},
              {"rhs", finite_or_null(r.rhs)},
              {"slack", finite_or_null(r.slack)},
              {"holds", r.holds ? json(*r.holds) : json(nullptr)},
              {"tolerance", r.tolerance},
              {"rhs_tight", optional_number(r.rhs_tight)},
              {"inputs", std::move(inputs)},
              {"flags", r.flags},
              {"labels", r.labels}};
}

json reports_to_json(const std::vector<BoundReport>& reports) {
  json list = json::array();
  std::size_t holding = 0, failing = 0, exempt = 0;
  for (const auto& r : reports) {
    list.push_back(report_to_json(r));
    if (r.exempt())
      ++exempt;
    else if (r.fails())
      ++failing;
    else
      ++holding;
  }
  return json{{"reports", std::move(list)},
              {"summary",
               {{"total", reports.size()},
                {"holding", holding},
                {"failing", failing},
                {"flagged", exempt}}}};
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "scenario,name,lhs,rhs,slack,holds,tolerance,rhs_tight,signature,mu,a,b,"
         "measure_T,measure_Omega,epsilon_T,epsilon_Omega,flags,labels\n";
  for (const auto& r : reports) {
    out << csv_quote(r.scenario) << ',' << r.name << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.slack) << ','
        << (r.holds ? (*r.holds ? "true" : "false") : "") << ',' << format_double(r.tolerance)
        << ',' << csv_optional(r.rhs_tight) << ',' << csv_quote(r.inputs.signature) << ','
        << csv_quote(r.inputs.mu) << ',' << csv_optional(r.inputs.a) << ','
        << csv_optional(r.inputs.b) << ',' << csv_optional(r.inputs.measure_T) << ','
        << csv_optional(r.inputs.measure_Omega) << ',' << csv_optional(r.inputs.epsilon_T)
        << ',' << csv_optional(r.inputs.epsilon_Omega) << ',' << join(r.flags, ';') << ','
        << join(r.labels, ';') << '\n';
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

template json field_to_json(const Field&);
template json field_to_json(const Spectrum&);
template Field field_from_json<Domain::time>(const json&);
template Spectrum field_from_json<Domain::frequency>(const json&);
template void write_field_csv(std::ostream&, const Field&);
template void write_field_csv(std::ostream&, const Spectrum&);
template Field read_field_csv<Domain::time>(std::istream&);
template Spectrum read_field_csv<Domain::frequency>(std::istream&);
template void save_field(const std::filesystem::path&, const Field&);
template void save_field(const std::filesystem::path&, const Spectrum&);
template Field load_field<Domain::time>(const std::filesystem::path&);
template Spectrum load_field<Domain::frequency>(const std::filesystem::path&);
template json mask_to_json(const TimeRegion&);
template json mask_to_json(const FrequencyRegion&);
template TimeRegion mask_from_json<Domain::time>(const json&);
template FrequencyRegion mask_from_json<Domain::frequency>(const json&);
template TimeRegion load_mask<Domain::time>(const std::filesystem::path&);
template FrequencyRegion load_mask<Domain::frequency>(const std::filesystem::path&);

}  // namespace cliffup::io
