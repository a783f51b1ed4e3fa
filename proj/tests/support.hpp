#pragma once

// Shared generators and independent oracles for the test suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cliffup/algebra.hpp"
#include "cliffup/field.hpp"
#include "cliffup/operators.hpp"
#include "cliffup/transform.hpp"

namespace cliffup::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261016);
  return engine;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Multivectord random_multivector(const Signature& sig) {
  Multivectord::Coefficients c(sig.blade_count());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = uniform();
  return Multivectord(sig, c);
}

inline Field random_field(const GridSpec& grid, const Signature& sig) {
  Field f(grid, sig);
  for (Eigen::Index i = 0; i < f.values().size(); ++i) f.values().data()[i] = uniform();
  return f;
}

/// Random field tapered by exp(-|t|^2 / (2 w^2)).
inline Field random_decaying_field(const GridSpec& grid, const Signature& sig, double w) {
  Field f = random_field(grid, sig);
  const Coordinates t = grid.coordinates(Domain::time);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    f.values().row(i) *= std::exp(-t.row(i).squaredNorm() / (2.0 * w * w));
  return f;
}

inline Field gaussian_field(const GridSpec& grid, const Signature& sig, double center = 0.0,
                            double width = 1.0) {
  Field f(grid, sig);
  const Coordinates t = grid.coordinates(Domain::time);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    double r2 = 0.0;
    for (Eigen::Index l = 0; l < t.cols(); ++l) r2 += (t(i, l) - center) * (t(i, l) - center);
    f.values()(i, 0) = std::exp(-r2 / (2.0 * width * width));
  }
  return f;
}

inline SqrtMinusOned blade_mu(const Signature& sig, BladeIndex blade) {
  return SqrtMinusOned(Multivectord::blade(sig, blade));
}

/// A unit blade squaring to -1 in the given signature.
inline SqrtMinusOned default_blade_mu(const Signature& sig) {
  const auto count = static_cast<BladeIndex>(sig.blade_count());
  for (BladeIndex b = 1; b < count; ++b) {
    const auto e = Multivectord::blade(sig, b);
    if (geometric_product(e, e)[0] == -1.0) return SqrtMinusOned(e);
  }
  throw std::logic_error("no blade squares to -1");
}

/// Square roots of -1 that are not blades.
/// Cl(1,1): a e1 + sqrt(1 + a^2 + c^2) e2 + c e12 squares to -1.
inline SqrtMinusOned mixed_mu_cl11(double a, double c) {
  const Signature sig(1, 1);
  Multivectord::Coefficients m = Multivectord::Coefficients::Zero(4);
  m[0b01] = a;
  m[0b10] = std::sqrt(1.0 + a * a + c * c);
  m[0b11] = c;
  return SqrtMinusOned(Multivectord(sig, m));
}

/// Cl(0,2) ~ quaternions: unit pure quaternion x e1 + y e2 + z e12.
inline SqrtMinusOned unit_pure_quaternion(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  Multivectord::Coefficients m = Multivectord::Coefficients::Zero(4);
  m[0b01] = x / r;
  m[0b10] = y / r;
  m[0b11] = z / r;
  return SqrtMinusOned(Multivectord(Signature(0, 2), m));
}

/// Cl(3,0): unit bivector x e12 + y e13 + z e23.
inline SqrtMinusOned unit_bivector_cl30(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  Multivectord::Coefficients m = Multivectord::Coefficients::Zero(8);
  m[0b011] = x / r;
  m[0b101] = y / r;
  m[0b110] = z / r;
  return SqrtMinusOned(Multivectord(Signature(3, 0), m));
}

/// Classical DFT on the scenario lattice, evaluated with std::complex from
/// coordinates: sum_t x(t) exp(-i t.xi) dt^n. Independent of the library's
/// sign and FFT bookkeeping.
inline std::vector<std::complex<double>> complex_dft_oracle(const GridSpec& grid,
                                                            const std::vector<std::complex<double>>& x) {
  const Coordinates t = grid.coordinates(Domain::time);
  const Coordinates xi = grid.coordinates(Domain::frequency);
  std::vector<std::complex<double>> out(x.size());
  const double cell = grid.cell_volume(Domain::time);
  for (Eigen::Index k = 0; k < xi.rows(); ++k) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index j = 0; j < t.rows(); ++j)
      acc += x[static_cast<std::size_t>(j)] * std::polar(1.0, -t.row(j).dot(xi.row(k)));
    out[static_cast<std::size_t>(k)] = acc * cell;
  }
  return out;
}

/// Largest coefficient difference relative to the largest coefficient of `ref`.
template <Domain D>
double relative_max_error(const Sampled<D>& got, const Sampled<D>& ref) {
  const double scale = std::max(ref.values().cwiseAbs().maxCoeff(), 1e-300);
  return (got.values() - ref.values()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace cliffup::testing
