#pragma once

// Evaluators for the Hausdorff-Young inequality and the Donoho-Stark
// concentration inequalities of the Clifford Fourier transform. Every
// evaluator computes both sides on the sampled instance and reports slack.
// Concentrations are always measured, never supplied.

#include <stdexcept>
#include <string>

#include "cliffup/field.hpp"
#include "cliffup/operators.hpp"
#include "cliffup/report.hpp"
#include "cliffup/transform.hpp"

namespace cliffup {

struct Tolerances {
  /// Relative slack tolerance for identities exact on the DFT lattice.
  double exact = 1e-9;
  /// Relative tolerance for comparisons against continuum closed forms.
  double continuum = 1e-3;
  /// Relative sup-norm deviation allowed by the Q_Omega g == g check.
  double bandlimit = 1e-9;
};

/// (2^n c_mu)^{1 - 2/b} (2 pi)^{2n/b}, as used in every statement below.
double hausdorff_young_constant(int n, double c_mu, double b);

/// Same interpolation with the Parseval norm (2 pi)^{n/2} at the (2,2) end.
double hausdorff_young_constant_tight(int n, double c_mu, double b);

class NotBandlimited : public std::invalid_argument {
 public:
  NotBandlimited(double deviation, double scale);
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// ||F f||_2 against (2 pi)^{n/2} ||f||_2: lhs is the relative deviation,
/// rhs the allowed tolerance.
BoundReport parseval_check(const Field& f, const SqrtMinusOned& mu, const Tolerances& tol = {});

/// ||F f||_b <= C_h ||f||_a, 1 <= a <= 2.
BoundReport hausdorff_young(const Field& f, const SqrtMinusOned& mu, double a,
                            const Tolerances& tol = {});

/// ||chi_Omega F(P_T f)||_b <= 2^n c_mu |T|^{1/b} |Omega|^{1/b} ||f||_a, 1 < a <= 2.
BoundReport qp_composition_bound(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                                 const FrequencyRegion& Omega, double a,
                                 const Tolerances& tol = {});

/// ||F f||_b <= (c_mu 2^n |T|^{1/b}|Omega|^{1/b} + C_h eps_T) / (1 - eps_Omega) ||f||_a.
BoundReport donoho_stark_1(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                           const FrequencyRegion& Omega, double a, const Tolerances& tol = {});

/// (2 pi)^{n/2} (1 - eps_Omega) - C_h eps_T <= c_mu 2^n |T|^{1/2} |Omega|^{1/2}.
BoundReport donoho_stark_l2_corollary(const Field& f, const SqrtMinusOned& mu,
                                      const TimeRegion& T, const FrequencyRegion& Omega,
                                      const Tolerances& tol = {});

/// (pi/2)^n / (1 + |mu|^2) <= |T||Omega| on eta-essential supports.
BoundReport support_bound(const Field& f, const SqrtMinusOned& mu, double eta,
                          const Tolerances& tol = {});

/// ||F f||_b <= 2^n c_mu |T|^{1/b}|Omega|^{1/b} / ((1 - eps_Omega)(1 - eps_T)) ||f||_a,
/// with eps_T measured in L^1.
BoundReport donoho_stark_2(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                           const FrequencyRegion& Omega, double a, const Tolerances& tol = {});

/// ||P_T g||_a <= (c_mu C_h / pi^n) |T|^{1/a} |Omega|^{1/a} ||g||_a for g = Q_Omega g.
/// Throws NotBandlimited when g is not fixed by Q_Omega.
BoundReport bandlimited_lemma(const Field& g, const SqrtMinusOned& mu, const TimeRegion& T,
                              const FrequencyRegion& Omega, double a, const Tolerances& tol = {});

/// (1 - eps_Omega - eps_T) / (1 + eps_Omega) <= (c_mu C_h / pi^n) |T|^{1/a} |Omega|^{1/a},
/// eps_Omega from the canonical witness Q_Omega f.
BoundReport donoho_stark_bandlimited(const Field& f, const SqrtMinusOned& mu,
                                     const TimeRegion& T, const FrequencyRegion& Omega, double a,
                                     const Tolerances& tol = {});

}  // namespace cliffup
