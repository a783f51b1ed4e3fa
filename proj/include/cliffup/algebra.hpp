#pragma once

// Real Clifford algebra Cl(p,q) with dense coefficient storage.
//
// A multivector holds 2^n coefficients. Coefficient index b is a bitmask:
// bit l set means generator e_{l+1} appears in the blade, generators taken
// in ascending order. Blade products are signed by counting the
// transpositions needed to sort the concatenated generator list and by the
// squares of the generators that cancel.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cliffup/report.hpp"

namespace cliffup {

using BladeIndex = std::uint32_t;

class Signature {
 public:
  static constexpr int max_dimension = 12;

  Signature() = default;
  Signature(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0)
      throw std::invalid_argument("signature: p and q must be non-negative");
    if (p + q > max_dimension)
      throw std::invalid_argument("signature: p + q must not exceed 12");
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_; }
  Eigen::Index blade_count() const { return Eigen::Index{1} << n(); }

  /// Square of generator e_{k+1} (0-based k): +1 for the first p, -1 after.
  int epsilon(int k) const { return k < p_ ? 1 : -1; }

  /// Bitmask of the generators squaring to -1.
  BladeIndex negative_mask() const {
    return ((BladeIndex{1} << n()) - 1) & ~((BladeIndex{1} << p_) - 1);
  }

  std::string to_string() const {
    return "Cl(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int p_ = 0;
  int q_ = 0;
};

inline int grade_of(BladeIndex blade) { return std::popcount(blade); }

/// Sign of e_a * e_b, whose blade is a ^ b.
inline int blade_product_sign(const Signature& sig, BladeIndex a, BladeIndex b) {
  int swaps = 0;
  for (BladeIndex rest = a >> 1; rest != 0; rest >>= 1)
    swaps += std::popcount(rest & b);
  swaps += std::popcount(a & b & sig.negative_mask());
  return (swaps & 1) ? -1 : 1;
}

/// Sign applied to e_A by the reverse: (-1)^{k(k-1)/2} times the product of
/// the generator squares in A.
inline int reverse_sign(const Signature& sig, BladeIndex blade) {
  const int k = grade_of(blade);
  int flips = (k * (k - 1) / 2) + std::popcount(blade & sig.negative_mask());
  return (flips & 1) ? -1 : 1;
}

/// "1", "e1", "e12", "e123", ... Generators above 9 are written e{10}.
inline std::string blade_name(BladeIndex blade) {
  if (blade == 0) return "1";
  std::string name = "e";
  for (int l = 0; blade >> l; ++l) {
    if (!((blade >> l) & 1u)) continue;
    if (l + 1 < 10)
      name += static_cast<char>('0' + l + 1);
    else
      name += "{" + std::to_string(l + 1) + "}";
  }
  return name;
}

/// Inverse of blade_name. Generators must be ascending and at most n.
inline BladeIndex parse_blade(const std::string& name, int n) {
  if (name == "1") return 0;
  if (name.size() < 2 || name[0] != 'e')
    throw std::invalid_argument("blade name '" + name + "' must be '1' or start with 'e'");
  BladeIndex blade = 0;
  int last = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    int gen = 0;
    if (name[i] == '{') {
      const auto close = name.find('}', i);
      if (close == std::string::npos)
        throw std::invalid_argument("blade name '" + name + "': unterminated '{'");
      gen = std::stoi(name.substr(i + 1, close - i - 1));
      i = close;
    } else if (name[i] >= '1' && name[i] <= '9') {
      gen = name[i] - '0';
    } else {
      throw std::invalid_argument("blade name '" + name + "': bad character");
    }
    if (gen <= last || gen > n)
      throw std::invalid_argument("blade name '" + name +
                                  "': generators must be ascending and within the signature");
    blade |= BladeIndex{1} << (gen - 1);
    last = gen;
  }
  return blade;
}

template <typename Scalar>
class Multivector {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Multivector() = default;
  explicit Multivector(const Signature& sig)
      : sig_(sig), coeffs_(Coefficients::Zero(sig.blade_count())) {}
  Multivector(const Signature& sig, Coefficients coeffs)
      : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.blade_count())
      throw std::invalid_argument("multivector: coefficient count must be 2^n");
  }

  static Multivector scalar(const Signature& sig, Scalar value) {
    Multivector m(sig);
    m.coeffs_[0] = value;
    return m;
  }
  static Multivector blade(const Signature& sig, BladeIndex index, Scalar value = Scalar(1)) {
    if (index >= static_cast<BladeIndex>(sig.blade_count()))
      throw std::invalid_argument("multivector: blade index outside the algebra");
    Multivector m(sig);
    m.coeffs_[index] = value;
    return m;
  }

  const Signature& signature() const { return sig_; }
  const Coefficients& coeffs() const { return coeffs_; }
  Scalar operator[](BladeIndex index) const { return coeffs_[index]; }
  Eigen::Index size() const { return coeffs_.size(); }

  std::string to_string() const {
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    for (Eigen::Index b = 0; b < coeffs_.size(); ++b) {
      if (coeffs_[b] == Scalar(0)) continue;
      if (!first) out << " + ";
      out << coeffs_[b];
      if (b != 0) out << "*" << blade_name(static_cast<BladeIndex>(b));
      first = false;
    }
    if (first) out << "0";
    return out.str();
  }

 private:
  Signature sig_;
  Coefficients coeffs_;
};

using Multivectord = Multivector<double>;

namespace detail {

inline void require_same(const Signature& a, const Signature& b, const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": signature mismatch (" + a.to_string() +
                                " vs " + b.to_string() + ")");
}

/// out += a * b on raw coefficient vectors.
template <typename DerivedA, typename DerivedB, typename DerivedOut>
void multiply_accumulate(const Signature& sig, const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& b,
                         Eigen::MatrixBase<DerivedOut>& out) {
  const auto count = static_cast<BladeIndex>(sig.blade_count());
  for (BladeIndex i = 0; i < count; ++i) {
    const auto ai = a[i];
    if (ai == 0) continue;
    for (BladeIndex j = 0; j < count; ++j) {
      const auto bj = b[j];
      if (bj == 0) continue;
      out[i ^ j] += blade_product_sign(sig, i, j) * ai * bj;
    }
  }
}

}  // namespace detail

template <typename Scalar>
Multivector<Scalar> operator+(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  detail::require_same(a.signature(), b.signature(), "add");
  return Multivector<Scalar>(a.signature(), a.coeffs() + b.coeffs());
}

template <typename Scalar>
Multivector<Scalar> operator-(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  detail::require_same(a.signature(), b.signature(), "subtract");
  return Multivector<Scalar>(a.signature(), a.coeffs() - b.coeffs());
}

template <typename Scalar>
Multivector<Scalar> operator-(const Multivector<Scalar>& a) {
  return Multivector<Scalar>(a.signature(), -a.coeffs());
}

template <typename Scalar>
Multivector<Scalar> operator*(Scalar s, const Multivector<Scalar>& a) {
  return Multivector<Scalar>(a.signature(), s * a.coeffs());
}

template <typename Scalar>
Multivector<Scalar> operator*(const Multivector<Scalar>& a, Scalar s) {
  return s * a;
}

template <typename Scalar>
Multivector<Scalar> geometric_product(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  detail::require_same(a.signature(), b.signature(), "geometric_product");
  Multivector<Scalar> out(a.signature());
  typename Multivector<Scalar>::Coefficients acc = out.coeffs();
  detail::multiply_accumulate(a.signature(), a.coeffs(), b.coeffs(), acc);
  return Multivector<Scalar>(a.signature(), std::move(acc));
}

template <typename Scalar>
Multivector<Scalar> operator*(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  return geometric_product(a, b);
}

/// <f>_k: the grade-k part.
template <typename Scalar>
Multivector<Scalar> grade_project(const Multivector<Scalar>& f, int k) {
  if (k < 0 || k > f.signature().n())
    throw std::invalid_argument("grade_project: grade " + std::to_string(k) +
                                " outside [0, n]");
  auto coeffs = f.coeffs();
  for (Eigen::Index b = 0; b < coeffs.size(); ++b)
    if (grade_of(static_cast<BladeIndex>(b)) != k) coeffs[b] = Scalar(0);
  return Multivector<Scalar>(f.signature(), std::move(coeffs));
}

/// Reverse composed with the bar conjugation; every basis blade satisfies
/// e_A * reverse_tilde(e_A) = 1.
template <typename Scalar>
Multivector<Scalar> reverse_tilde(const Multivector<Scalar>& f) {
  auto coeffs = f.coeffs();
  for (Eigen::Index b = 0; b < coeffs.size(); ++b)
    coeffs[b] *= reverse_sign(f.signature(), static_cast<BladeIndex>(b));
  return Multivector<Scalar>(f.signature(), std::move(coeffs));
}

template <typename Scalar>
Scalar scalar_product(const Multivector<Scalar>& f, const Multivector<Scalar>& g) {
  detail::require_same(f.signature(), g.signature(), "scalar_product");
  return f.coeffs().dot(g.coeffs());
}

template <typename Scalar>
Scalar modulus(const Multivector<Scalar>& f) {
  return f.coeffs().norm();
}

/// Matrix R with (f * m) = f^T R for every f (coefficients as row vectors).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> right_multiplication_matrix(
    const Multivector<Scalar>& m) {
  const auto& sig = m.signature();
  const auto count = static_cast<BladeIndex>(sig.blade_count());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> r =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(count, count);
  for (BladeIndex a = 0; a < count; ++a)
    for (BladeIndex b = 0; b < count; ++b)
      if (m[b] != Scalar(0)) r(a, a ^ b) += blade_product_sign(sig, a, b) * m[b];
  return r;
}

/// Raised when a candidate multivector does not square to -1.
class NotSqrtMinusOne : public std::invalid_argument {
 public:
  NotSqrtMinusOne(const std::string& candidate, const std::string& square)
      : std::invalid_argument("mu*mu = " + square + " (expected -1) for mu = " + candidate),
        square_(square) {}
  const std::string& measured_square() const { return square_; }

 private:
  std::string square_;
};

/// A multivector mu with mu^2 = -1, checked at construction, together with
/// the kernel constant c_mu = (1 + |mu|^2)^{1/2}.
template <typename Scalar>
class SqrtMinusOne {
 public:
  explicit SqrtMinusOne(Multivector<Scalar> mu) : mu_(std::move(mu)) {
    const Scalar norm2 = mu_.coeffs().squaredNorm();
    auto square = geometric_product(mu_, mu_);
    auto residual = square.coeffs();
    residual[0] += Scalar(1);
    if (!(residual.norm() <= Scalar(1e-12) * (Scalar(1) + norm2)))
      throw NotSqrtMinusOne(mu_.to_string(), square.to_string());
    c_mu_ = std::sqrt(Scalar(1) + norm2);
    const auto r = right_multiplication_matrix(mu_);
    const auto gram = r * r.transpose();
    const auto id = decltype(gram)::Identity(r.rows(), r.cols());
    isometric_ = (gram - id).cwiseAbs().maxCoeff() <= Scalar(1e-12);
  }

  const Multivector<Scalar>& mu() const { return mu_; }
  const Signature& signature() const { return mu_.signature(); }
  Scalar c_mu() const { return c_mu_; }

  /// Whether f -> f*mu preserves the coefficient norm. True for unit blades;
  /// the Parseval-based statements are only certified in this case.
  bool right_multiplication_is_isometry() const { return isometric_; }

 private:
  Multivector<Scalar> mu_;
  Scalar c_mu_ = Scalar(1);
  bool isometric_ = false;
};

using SqrtMinusOned = SqrtMinusOne<double>;

/// cos(theta) + mu sin(theta).
template <typename Scalar>
Multivector<Scalar> exp_mu(Scalar theta, const SqrtMinusOne<Scalar>& mu) {
  auto coeffs = (std::sin(theta) * mu.mu().coeffs()).eval();
  coeffs[0] += std::cos(theta);
  return Multivector<Scalar>(mu.signature(), std::move(coeffs));
}

/// |a b| <= 2^n |a| |b|.
template <typename Scalar>
BoundReport check_product_norm_bound(const Multivector<Scalar>& a, const Multivector<Scalar>& b) {
  detail::require_same(a.signature(), b.signature(), "check_product_norm_bound");
  BoundReport r;
  r.name = "product_norm";
  r.lhs = static_cast<double>(modulus(geometric_product(a, b)));
  r.rhs = std::ldexp(1.0, a.signature().n()) * static_cast<double>(modulus(a) * modulus(b));
  r.tolerance = 1e-12;
  r.decide(r.lhs <= r.rhs + 1e-12 * r.rhs);
  r.inputs.signature = a.signature().to_string();
  return r;
}

/// |exp_mu(-theta)| <= c_mu.
template <typename Scalar>
BoundReport check_kernel_bound(const SqrtMinusOne<Scalar>& mu, Scalar theta) {
  BoundReport r;
  r.name = "kernel_bound";
  r.lhs = static_cast<double>(modulus(exp_mu(-theta, mu)));
  r.rhs = static_cast<double>(mu.c_mu());
  r.tolerance = 1e-12;
  r.decide(r.lhs <= r.rhs + 1e-12);
  r.inputs.signature = mu.signature().to_string();
  r.inputs.mu = mu.mu().to_string();
  return r;
}

}  // namespace cliffup
