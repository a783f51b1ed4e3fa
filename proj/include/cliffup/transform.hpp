#pragma once

// Discrete Clifford Fourier transform
//
//   F(xi) = sum_t f(t) exp(-mu u(t, xi)) dt^n,   u(t, xi) = sum_l t_l xi_l,
//   f(t)  = (2 pi)^-n sum_xi F(xi) exp(+mu u(t, xi)) dxi^n,
//
// with the kernel always on the right. Time and frequency lattices are
// DFT-conjugate (dt * dxi * N = 2 pi), which makes inversion and, for mu with
// an isometric right multiplication, Parseval exact in floating point.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include "cliffup/algebra.hpp"
#include "cliffup/field.hpp"

namespace cliffup {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Euclidean dot product of t and xi; independent of the signature.
double u_phase(std::span<const double> t, std::span<const double> xi);

/// O(N^{2n}) evaluation of the defining sum. Reference for cft_fast.
Spectrum cft_direct(const Field& f, const SqrtMinusOned& mu);

/// F = Cos[f] - Sin[f] mu with one complex FFT per blade component.
Spectrum cft_fast(const Field& f, const SqrtMinusOned& mu);

inline Spectrum cft(const Field& f, const SqrtMinusOned& mu) { return cft_fast(f, mu); }

/// Inverse transform through the FFT path.
Field icft(const Spectrum& spectrum, const SqrtMinusOned& mu);

/// Inverse transform by direct summation.
Field icft_direct(const Spectrum& spectrum, const SqrtMinusOned& mu);

/// b with 1/a + 1/b = 1; 1 <-> infinity.
inline double conjugate_exponent(double a) {
  if (a == 1.0) return infinity;
  if (std::isinf(a)) return 1.0;
  return a / (a - 1.0);
}

/// (sum |v_i|^a cell)^{1/a}, or max |v_i| for a = infinity.
template <typename Derived>
double lp_norm_of_moduli(const Eigen::MatrixBase<Derived>& moduli, double cell, double a) {
  if (!(a >= 1.0))
    throw std::invalid_argument("lp_norm: exponent must be >= 1 (got " + std::to_string(a) + ")");
  if (moduli.size() == 0) return 0.0;
  if (std::isinf(a)) return moduli.maxCoeff();
  if (a == 1.0) return moduli.sum() * cell;
  if (a == 2.0) return std::sqrt(moduli.squaredNorm() * cell);
  return std::pow(moduli.array().pow(a).sum() * cell, 1.0 / a);
}

/// Riemann-sum L^a norm of a sampled field using the algebra modulus.
template <Domain D>
double lp_norm(const Sampled<D>& f, double a) {
  return lp_norm_of_moduli(f.moduli(), f.grid().cell_volume(D), a);
}

namespace detail {

inline void require_transformable(const Signature& field_sig, bool empty,
                                  const SqrtMinusOned& mu, const char* what) {
  if (empty) throw std::invalid_argument(std::string(what) + ": empty field");
  require_same(field_sig, mu.signature(), what);
}

/// Z_k = sum_j x_j exp(-i a_j . b_k) between the two lattices of `grid`,
/// column by column. The map is the same in both directions.
Eigen::MatrixXcd lattice_dft(const GridSpec& grid, const Eigen::MatrixXd& values);

}  // namespace detail

}  // namespace cliffup
