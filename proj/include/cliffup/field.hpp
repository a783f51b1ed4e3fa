#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "cliffup/algebra.hpp"
#include "cliffup/grid.hpp"

namespace cliffup {

/// Multivector-valued samples on one of the two lattices of a GridSpec.
/// values() has one row per lattice point and one column per blade.
template <Domain D>
class Sampled {
 public:
  static constexpr Domain domain = D;

  Sampled() = default;
  Sampled(const GridSpec& grid, const Signature& sig)
      : grid_(grid), sig_(sig), values_(Eigen::MatrixXd::Zero(grid.point_count(), sig.blade_count())) {
    check();
  }
  Sampled(const GridSpec& grid, const Signature& sig, Eigen::MatrixXd values)
      : grid_(grid), sig_(sig), values_(std::move(values)) {
    check();
  }

  const GridSpec& grid() const { return grid_; }
  const Signature& signature() const { return sig_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd& values() { return values_; }
  Eigen::Index size() const { return values_.rows(); }
  bool empty() const { return values_.size() == 0; }

  Multivectord at(Eigen::Index i) const {
    return Multivectord(sig_, values_.row(i).transpose());
  }
  void set(Eigen::Index i, const Multivectord& m) {
    detail::require_same(sig_, m.signature(), "field set");
    values_.row(i) = m.coeffs().transpose();
  }

  /// Pointwise moduli |f(t)|.
  Eigen::VectorXd moduli() const { return values_.rowwise().norm(); }

 private:
  void check() const {
    if (sig_.n() != grid_.dimension())
      throw std::invalid_argument("field: signature dimension " + std::to_string(sig_.n()) +
                                  " differs from grid dimension " +
                                  std::to_string(grid_.dimension()));
    if (values_.rows() != grid_.point_count() || values_.cols() != sig_.blade_count())
      throw std::invalid_argument("field: values must be N^n rows by 2^n columns");
  }

  GridSpec grid_;
  Signature sig_;
  Eigen::MatrixXd values_;
};

using Field = Sampled<Domain::time>;
using Spectrum = Sampled<Domain::frequency>;

template <Domain D>
Sampled<D> operator+(const Sampled<D>& a, const Sampled<D>& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("field add: grid mismatch");
  detail::require_same(a.signature(), b.signature(), "field add");
  return Sampled<D>(a.grid(), a.signature(), a.values() + b.values());
}

template <Domain D>
Sampled<D> operator-(const Sampled<D>& a, const Sampled<D>& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("field subtract: grid mismatch");
  detail::require_same(a.signature(), b.signature(), "field subtract");
  return Sampled<D>(a.grid(), a.signature(), a.values() - b.values());
}

template <Domain D>
Sampled<D> operator*(double s, const Sampled<D>& a) {
  return Sampled<D>(a.grid(), a.signature(), s * a.values());
}

/// Constant multivector times a field, multiplied from the left at every point.
template <Domain D>
Sampled<D> left_multiply(const Multivectord& alpha, const Sampled<D>& f) {
  detail::require_same(alpha.signature(), f.signature(), "left_multiply");
  // (alpha g)_C = sum_B g_B sum_A alpha_A sign(A,B) [A^B = C]
  const auto& sig = f.signature();
  const auto count = static_cast<BladeIndex>(sig.blade_count());
  Eigen::MatrixXd left = Eigen::MatrixXd::Zero(count, count);
  for (BladeIndex a = 0; a < count; ++a)
    if (alpha[a] != 0.0)
      for (BladeIndex b = 0; b < count; ++b) left(b, a ^ b) += blade_product_sign(sig, a, b) * alpha[a];
  return Sampled<D>(f.grid(), sig, f.values() * left);
}

/// Constant multivector applied from the right at every point.
template <Domain D>
Sampled<D> right_multiply(const Sampled<D>& f, const Multivectord& m) {
  detail::require_same(m.signature(), f.signature(), "right_multiply");
  return Sampled<D>(f.grid(), f.signature(), f.values() * right_multiplication_matrix(m));
}

}  // namespace cliffup
