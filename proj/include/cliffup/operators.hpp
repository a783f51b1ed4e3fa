#pragma once

// Time limiting P_T, band limiting Q_Omega and epsilon-concentration.

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliffup/field.hpp"
#include "cliffup/transform.hpp"

namespace cliffup {

/// Subset of one lattice of a grid. The measure uses that lattice's spacing:
/// dt^n for T, dxi^n for Omega.
template <Domain D>
class RegionMask {
 public:
  static constexpr Domain domain = D;

  RegionMask() = default;
  RegionMask(const GridSpec& grid, std::vector<std::uint8_t> mask)
      : grid_(grid), mask_(std::move(mask)) {
    if (static_cast<Eigen::Index>(mask_.size()) != grid_.point_count())
      throw std::invalid_argument("region mask: size must equal the lattice point count");
    for (auto& m : mask_) m = m ? 1 : 0;
    for (auto m : mask_) count_ += m;
  }

  static RegionMask empty(const GridSpec& grid) {
    return RegionMask(grid, std::vector<std::uint8_t>(grid.point_count(), 0));
  }
  static RegionMask full(const GridSpec& grid) {
    return RegionMask(grid, std::vector<std::uint8_t>(grid.point_count(), 1));
  }

  const GridSpec& grid() const { return grid_; }
  bool contains(Eigen::Index i) const { return mask_[static_cast<std::size_t>(i)] != 0; }
  Eigen::Index count() const { return count_; }
  double measure() const { return static_cast<double>(count_) * grid_.cell_volume(D); }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  friend bool operator==(const RegionMask&, const RegionMask&) = default;

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> mask_;
  Eigen::Index count_ = 0;
};

using TimeRegion = RegionMask<Domain::time>;
using FrequencyRegion = RegionMask<Domain::frequency>;

/// Lattice points x with lo <= x < hi on every axis. A degenerate box gives
/// the empty mask.
template <Domain D>
RegionMask<D> region_from_box(const GridSpec& grid, std::span<const double> lo,
                              std::span<const double> hi) {
  const auto n = static_cast<std::size_t>(grid.dimension());
  if (lo.size() != n || hi.size() != n)
    throw std::invalid_argument("region_from_box: corner dimension must equal grid dimension");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.point_count()), 0);
  for (Eigen::Index i = 0; i < grid.point_count(); ++i) {
    const auto idx = grid.multi_index(i);
    bool inside = true;
    for (std::size_t l = 0; l < n && inside; ++l) {
      const double x = grid.coordinate(D, idx[l]);
      inside = lo[l] <= x && x < hi[l];
    }
    mask[static_cast<std::size_t>(i)] = inside ? 1 : 0;
  }
  return RegionMask<D>(grid, std::move(mask));
}

/// chi_R . f
template <Domain D>
Sampled<D> restrict_to(const Sampled<D>& f, const RegionMask<D>& region) {
  if (!(f.grid() == region.grid()))
    throw std::invalid_argument("restrict_to: region grid differs from field grid");
  Sampled<D> out(f.grid(), f.signature());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (region.contains(i)) out.values().row(i) = f.values().row(i);
  return out;
}

/// P_T f
inline Field time_limit(const Field& f, const TimeRegion& region) { return restrict_to(f, region); }

/// Q_Omega f = icft(chi_Omega cft(f)).
Field band_limit(const Field& f, const FrequencyRegion& region, const SqrtMinusOned& mu);

struct ConcentrationReport {
  double epsilon = 0.0;
  double exponent = 2.0;
  double tail_mass = 0.0;
  double total_norm = 0.0;
};

/// Smallest epsilon with (sum_{x not in R} |f|^a)^{1/a} <= epsilon ||f||_a.
template <Domain D>
ConcentrationReport concentration(const Sampled<D>& f, const RegionMask<D>& region, double a) {
  if (!(f.grid() == region.grid()))
    throw std::invalid_argument("concentration: region grid differs from field grid");
  const Eigen::VectorXd moduli = f.moduli();
  Eigen::VectorXd outside = moduli;
  for (Eigen::Index i = 0; i < outside.size(); ++i)
    if (region.contains(i)) outside[i] = 0.0;
  const double cell = f.grid().cell_volume(D);
  ConcentrationReport r;
  r.exponent = a;
  r.total_norm = lp_norm_of_moduli(moduli, cell, a);
  if (!(r.total_norm > 0.0))
    throw std::invalid_argument("concentration: undefined for the zero field");
  r.tail_mass = lp_norm_of_moduli(outside, cell, a);
  r.epsilon = std::min(1.0, r.tail_mass / r.total_norm);
  return r;
}

struct BandlimitedWitness {
  Field g;
  double epsilon = 0.0;
};

/// g = Q_Omega f together with ||f - g||_a / ||f||_a.
BandlimitedWitness bandlimited_project(const Field& f, const FrequencyRegion& region,
                                       const SqrtMinusOned& mu, double a);

/// Smallest mask R (by point count) with concentration(f, R, a) <= eta,
/// built greedily from the largest |f| downward. Ties break on lattice order.
template <Domain D>
RegionMask<D> essential_support(const Sampled<D>& f, double eta, double a = 2.0);

}  // namespace cliffup
