#pragma once

// Interchange formats.
//
// Field (JSON):
//   {"domain": "time", "signature": {"p": 0, "q": 1},
//    "grid": {"dimension": 1, "samples_per_axis": 8, "half_width": 2.0},
//    "components": {"1": [...], "e1": [...]}}
// Each component array has N^n entries in row-major lattice order. Missing
// blades are zero.
//
// Field (CSV): a '#' metadata line with the same keys, a header row of
// coordinate columns (t1.. or xi1..) followed by blade names, then one row
// per lattice point. Numbers are written with 17 significant digits.
//
// Mask (JSON): {"domain": ..., "grid": {...}, "indices": [[i1, ..., in], ...]}
// listing the multi-indices of the lattice points inside the region.
//
// Reports: {"reports": [...], "summary": {...}} or a flat CSV, one row each.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffup/field.hpp"
#include "cliffup/operators.hpp"
#include "cliffup/report.hpp"

namespace cliffup::io {

using nlohmann::json;

json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const json& j);
json signature_to_json(const Signature& sig);
Signature signature_from_json(const json& j);

template <Domain D>
json field_to_json(const Sampled<D>& f);
template <Domain D>
Sampled<D> field_from_json(const json& j);

template <Domain D>
void write_field_csv(std::ostream& out, const Sampled<D>& f);
template <Domain D>
Sampled<D> read_field_csv(std::istream& in);

/// Chooses CSV for a ".csv" extension, JSON otherwise.
template <Domain D>
void save_field(const std::filesystem::path& path, const Sampled<D>& f);
template <Domain D>
Sampled<D> load_field(const std::filesystem::path& path);

template <Domain D>
json mask_to_json(const RegionMask<D>& region);
template <Domain D>
RegionMask<D> mask_from_json(const json& j);
template <Domain D>
RegionMask<D> load_mask(const std::filesystem::path& path);

json report_to_json(const BoundReport& r);
json reports_to_json(const std::vector<BoundReport>& reports);
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// %.17g
std::string format_double(double v);

}  // namespace cliffup::io
