#pragma once

#include <Eigen/Dense>

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cliffup {

enum class Domain { time, frequency };

inline const char* to_string(Domain d) { return d == Domain::time ? "time" : "frequency"; }

inline Domain domain_from_string(const std::string& s) {
  if (s == "time") return Domain::time;
  if (s == "frequency") return Domain::frequency;
  throw std::invalid_argument("domain must be 'time' or 'frequency', got '" + s + "'");
}

using Coordinates = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Regular lattice over [-L, L)^n with N samples per axis, paired with its
/// DFT-conjugate frequency lattice xi_k = pi k' / L, k' in [-N/2, N/2).
/// Points are linearised row-major: the last axis varies fastest.
class GridSpec {
 public:
  static constexpr int max_dimension = 3;

  GridSpec() = default;
  GridSpec(int dimension, int samples_per_axis, double half_width)
      : n_(dimension), samples_(samples_per_axis), half_width_(half_width) {
    if (dimension < 1 || dimension > max_dimension)
      throw std::invalid_argument("grid: dimension must be in [1, 3]");
    if (samples_per_axis < 4 || samples_per_axis % 2 != 0)
      throw std::invalid_argument("grid: samples_per_axis must be even and >= 4");
    if (!(half_width > 0.0))
      throw std::invalid_argument("grid: half_width must be positive");
  }

  int dimension() const { return n_; }
  int samples_per_axis() const { return samples_; }
  double half_width() const { return half_width_; }

  double time_spacing() const { return 2.0 * half_width_ / samples_; }
  double frequency_spacing() const { return std::numbers::pi / half_width_; }
  double spacing(Domain d) const {
    return d == Domain::time ? time_spacing() : frequency_spacing();
  }
  /// Delta^n for the lattice of the given domain.
  double cell_volume(Domain d) const {
    double v = 1.0;
    for (int l = 0; l < n_; ++l) v *= spacing(d);
    return v;
  }

  Eigen::Index point_count() const {
    Eigen::Index c = 1;
    for (int l = 0; l < n_; ++l) c *= samples_;
    return c;
  }

  /// Coordinate of lattice index j along one axis.
  double coordinate(Domain d, int j) const {
    if (d == Domain::time) return -half_width_ + j * time_spacing();
    return std::numbers::pi * (j - samples_ / 2) / half_width_;
  }

  std::array<int, max_dimension> multi_index(Eigen::Index linear) const {
    std::array<int, max_dimension> idx{};
    for (int l = n_ - 1; l >= 0; --l) {
      idx[l] = static_cast<int>(linear % samples_);
      linear /= samples_;
    }
    return idx;
  }

  Eigen::Index linear_index(const std::array<int, max_dimension>& idx) const {
    Eigen::Index linear = 0;
    for (int l = 0; l < n_; ++l) {
      if (idx[l] < 0 || idx[l] >= samples_)
        throw std::out_of_range("grid: lattice index out of range");
      linear = linear * samples_ + idx[l];
    }
    return linear;
  }

  /// One row per lattice point, one column per axis.
  Coordinates coordinates(Domain d) const {
    Coordinates c(point_count(), n_);
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      const auto idx = multi_index(i);
      for (int l = 0; l < n_; ++l) c(i, l) = coordinate(d, idx[l]);
    }
    return c;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_ = 0;
  int samples_ = 0;
  double half_width_ = 0.0;
};

}  // namespace cliffup
