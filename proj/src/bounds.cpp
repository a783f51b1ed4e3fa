#include "cliffup/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cliffup {

namespace {

constexpr double pi = std::numbers::pi;

void require_exponent(double a, double lo, bool lo_inclusive, const char* what) {
  const bool ok = (lo_inclusive ? a >= lo : a > lo) && a <= 2.0;
  if (!ok) {
    std::ostringstream msg;
    msg << what << ": exponent a = " << a << " outside " << (lo_inclusive ? "[" : "(") << lo
        << ", 2]";
    throw std::invalid_argument(msg.str());
  }
}

void require_regions(const Field& f, const TimeRegion& T, const FrequencyRegion& Omega,
                     const char* what) {
  if (f.empty()) throw std::invalid_argument(std::string(what) + ": empty field");
  if (!(T.grid() == f.grid()) || !(Omega.grid() == f.grid()))
    throw std::invalid_argument(std::string(what) + ": region grid differs from field grid");
}

BoundReport start(const char* name, const Field& f, const SqrtMinusOned& mu,
                  const Tolerances& tol) {
  detail::require_same(f.signature(), mu.signature(), name);
  BoundReport r;
  r.name = name;
  r.tolerance = tol.exact;
  r.inputs.signature = f.signature().to_string();
  r.inputs.mu = mu.mu().to_string();
  r.add_label(label::exact_lattice);
  return r;
}

// Statements whose proof passes through Parseval are only certified when
// right multiplication by mu is an isometry.
void mark_parseval_dependence(BoundReport& r, const SqrtMinusOned& mu) {
  if (!mu.right_multiplication_is_isometry()) r.add_flag(flag::experimental_mu);
}

double two_pow(int n) { return std::ldexp(1.0, n); }

}  // namespace

double hausdorff_young_constant(int n, double c_mu, double b) {
  const double inv_b = 1.0 / b;
  return std::pow(two_pow(n) * c_mu, 1.0 - 2.0 * inv_b) * std::pow(2.0 * pi, 2.0 * n * inv_b);
}

double hausdorff_young_constant_tight(int n, double c_mu, double b) {
  const double inv_b = 1.0 / b;
  return std::pow(two_pow(n) * c_mu, 1.0 - 2.0 * inv_b) * std::pow(2.0 * pi, n * inv_b);
}

NotBandlimited::NotBandlimited(double deviation, double scale)
    : std::invalid_argument([&] {
        std::ostringstream msg;
        msg.precision(6);
        msg << "g is not bandlimited on Omega: max |Q_Omega g - g| = " << deviation
            << " against max |g| = " << scale;
        return msg.str();
      }()),
      deviation_(deviation) {}

BoundReport parseval_check(const Field& f, const SqrtMinusOned& mu, const Tolerances& tol) {
  BoundReport r = start("parseval", f, mu, tol);
  if (f.empty()) throw std::invalid_argument("parseval: empty field");
  const int n = f.signature().n();
  const double time_norm = lp_norm(f, 2.0);
  if (!(time_norm > 0.0)) throw std::invalid_argument("parseval: zero field");
  const double freq_norm = lp_norm(cft_fast(f, mu), 2.0);
  const double expected = std::pow(2.0 * pi, 0.5 * n) * time_norm;
  r.lhs = std::abs(freq_norm - expected) / expected;
  r.rhs = tol.exact;
  r.inputs.a = 2.0;
  r.inputs.b = 2.0;
  // Relative deviation against a relative bound: no extra scale.
  r.tolerance = 0.0;
  r.decide_by_slack();
  mark_parseval_dependence(r, mu);
  return r;
}

BoundReport hausdorff_young(const Field& f, const SqrtMinusOned& mu, double a,
                            const Tolerances& tol) {
  require_exponent(a, 1.0, true, "hausdorff_young");
  if (f.empty()) throw std::invalid_argument("hausdorff_young: empty field");
  BoundReport r = start("hausdorff_young", f, mu, tol);
  const int n = f.signature().n();
  const double b = conjugate_exponent(a);
  const double f_norm = lp_norm(f, a);
  r.lhs = lp_norm(cft_fast(f, mu), b);
  r.rhs = hausdorff_young_constant(n, mu.c_mu(), b) * f_norm;
  r.rhs_tight = hausdorff_young_constant_tight(n, mu.c_mu(), b) * f_norm;
  r.inputs.a = a;
  r.inputs.b = b;
  r.decide_by_slack();
  if (!std::isinf(b)) mark_parseval_dependence(r, mu);
  return r;
}

BoundReport qp_composition_bound(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                                 const FrequencyRegion& Omega, double a, const Tolerances& tol) {
  require_exponent(a, 1.0, false, "qp_composition_bound");
  require_regions(f, T, Omega, "qp_composition_bound");
  BoundReport r = start("qp_composition", f, mu, tol);
  const int n = f.signature().n();
  const double b = conjugate_exponent(a);
  r.lhs = lp_norm(restrict_to(cft_fast(time_limit(f, T), mu), Omega), b);
  r.rhs = two_pow(n) * mu.c_mu() * std::pow(T.measure(), 1.0 / b) *
          std::pow(Omega.measure(), 1.0 / b) * lp_norm(f, a);
  r.inputs.a = a;
  r.inputs.b = b;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.decide_by_slack();
  return r;
}

BoundReport donoho_stark_1(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                           const FrequencyRegion& Omega, double a, const Tolerances& tol) {
  require_exponent(a, 1.0, false, "donoho_stark_1");
  require_regions(f, T, Omega, "donoho_stark_1");
  BoundReport r = start("donoho_stark_1", f, mu, tol);
  const int n = f.signature().n();
  const double b = conjugate_exponent(a);
  const Spectrum F = cft_fast(f, mu);
  const double eps_T = concentration(f, T, a).epsilon;
  const double eps_Omega = concentration(F, Omega, b).epsilon;
  const double f_norm = lp_norm(f, a);
  const double support_term = mu.c_mu() * two_pow(n) * std::pow(T.measure(), 1.0 / b) *
                              std::pow(Omega.measure(), 1.0 / b);

  r.inputs.a = a;
  r.inputs.b = b;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.inputs.epsilon_T = eps_T;
  r.inputs.epsilon_Omega = eps_Omega;
  r.lhs = lp_norm(F, b);
  if (eps_Omega >= 1.0) {
    r.rhs = infinity;
    r.withhold_verdict(flag::hypothesis_violated);
    return r;
  }
  r.rhs = (support_term + hausdorff_young_constant(n, mu.c_mu(), b) * eps_T) /
          (1.0 - eps_Omega) * f_norm;
  r.rhs_tight = (support_term + hausdorff_young_constant_tight(n, mu.c_mu(), b) * eps_T) /
                (1.0 - eps_Omega) * f_norm;
  r.decide_by_slack();
  mark_parseval_dependence(r, mu);
  return r;
}

BoundReport donoho_stark_l2_corollary(const Field& f, const SqrtMinusOned& mu,
                                      const TimeRegion& T, const FrequencyRegion& Omega,
                                      const Tolerances& tol) {
  require_regions(f, T, Omega, "donoho_stark_l2_corollary");
  BoundReport r = start("donoho_stark_l2", f, mu, tol);
  const int n = f.signature().n();
  const Spectrum F = cft_fast(f, mu);
  const double eps_T = concentration(f, T, 2.0).epsilon;
  const double eps_Omega = concentration(F, Omega, 2.0).epsilon;
  r.inputs.a = 2.0;
  r.inputs.b = 2.0;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.inputs.epsilon_T = eps_T;
  r.inputs.epsilon_Omega = eps_Omega;
  r.lhs = std::pow(2.0 * pi, 0.5 * n) * (1.0 - eps_Omega) -
          hausdorff_young_constant(n, mu.c_mu(), 2.0) * eps_T;
  r.rhs = mu.c_mu() * two_pow(n) * std::sqrt(T.measure() * Omega.measure());
  r.decide_by_slack();
  if (r.lhs <= 0.0) r.add_flag(flag::vacuous);
  mark_parseval_dependence(r, mu);
  return r;
}

BoundReport support_bound(const Field& f, const SqrtMinusOned& mu, double eta,
                          const Tolerances& tol) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("support_bound: threshold eta must lie in (0, 1)");
  if (f.empty()) throw std::invalid_argument("support_bound: empty field");
  BoundReport r = start("support_bound", f, mu, tol);
  r.add_label(label::eta_approximate);
  const int n = f.signature().n();
  const Spectrum F = cft_fast(f, mu);
  const TimeRegion T = essential_support(f, eta, 2.0);
  const FrequencyRegion Omega = essential_support(F, eta, 2.0);
  const double mu_norm2 = mu.mu().coeffs().squaredNorm();

  r.inputs.a = 2.0;
  r.inputs.b = 2.0;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.inputs.epsilon_T = concentration(f, T, 2.0).epsilon;
  r.inputs.epsilon_Omega = concentration(F, Omega, 2.0).epsilon;
  r.lhs = std::pow(pi / 2.0, n) / (1.0 + mu_norm2);
  r.rhs = T.measure() * Omega.measure();

  // With eps_T = eps_Omega = eta the L^2 corollary has a non-positive left
  // side from this threshold on, and constrains nothing.
  const double parseval = std::pow(2.0 * pi, 0.5 * n);
  const double weak_from = parseval / (parseval + hausdorff_young_constant(n, mu.c_mu(), 2.0));
  if (eta >= weak_from) {
    r.withhold_verdict(flag::hypothesis_weak);
    return r;
  }
  r.decide_by_slack();
  mark_parseval_dependence(r, mu);
  return r;
}

BoundReport donoho_stark_2(const Field& f, const SqrtMinusOned& mu, const TimeRegion& T,
                           const FrequencyRegion& Omega, double a, const Tolerances& tol) {
  require_exponent(a, 1.0, false, "donoho_stark_2");
  require_regions(f, T, Omega, "donoho_stark_2");
  BoundReport r = start("donoho_stark_2", f, mu, tol);
  const int n = f.signature().n();
  const double b = conjugate_exponent(a);
  const Spectrum F = cft_fast(f, mu);
  const double eps_T = concentration(f, T, 1.0).epsilon;
  const double eps_Omega = concentration(F, Omega, b).epsilon;

  r.inputs.a = a;
  r.inputs.b = b;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.inputs.epsilon_T = eps_T;
  r.inputs.epsilon_Omega = eps_Omega;
  r.lhs = lp_norm(F, b);
  if (eps_T >= 1.0 || eps_Omega >= 1.0) {
    r.rhs = infinity;
    r.withhold_verdict(flag::hypothesis_violated);
    return r;
  }
  r.rhs = two_pow(n) * mu.c_mu() * std::pow(T.measure(), 1.0 / b) *
          std::pow(Omega.measure(), 1.0 / b) / ((1.0 - eps_Omega) * (1.0 - eps_T)) *
          lp_norm(f, a);
  r.decide_by_slack();
  return r;
}

BoundReport bandlimited_lemma(const Field& g, const SqrtMinusOned& mu, const TimeRegion& T,
                              const FrequencyRegion& Omega, double a, const Tolerances& tol) {
  require_exponent(a, 1.0, true, "bandlimited_lemma");
  require_regions(g, T, Omega, "bandlimited_lemma");
  BoundReport r = start("bandlimited_lemma", g, mu, tol);
  const int n = g.signature().n();
  const double b = conjugate_exponent(a);

  const double scale = lp_norm(g, infinity);
  const double deviation = lp_norm(band_limit(g, Omega, mu) - g, infinity);
  if (deviation > tol.bandlimit * scale) throw NotBandlimited(deviation, scale);

  const double factor = mu.c_mu() / std::pow(pi, n) * std::pow(T.measure(), 1.0 / a) *
                        std::pow(Omega.measure(), 1.0 / a) * lp_norm(g, a);
  r.inputs.a = a;
  r.inputs.b = b;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.lhs = lp_norm(time_limit(g, T), a);
  r.rhs = hausdorff_young_constant(n, mu.c_mu(), b) * factor;
  r.rhs_tight = hausdorff_young_constant_tight(n, mu.c_mu(), b) * factor;
  r.decide_by_slack();
  if (!std::isinf(b)) mark_parseval_dependence(r, mu);
  return r;
}

BoundReport donoho_stark_bandlimited(const Field& f, const SqrtMinusOned& mu,
                                     const TimeRegion& T, const FrequencyRegion& Omega, double a,
                                     const Tolerances& tol) {
  require_exponent(a, 1.0, true, "donoho_stark_bandlimited");
  require_regions(f, T, Omega, "donoho_stark_bandlimited");
  BoundReport r = start("donoho_stark_bandlimited", f, mu, tol);
  const int n = f.signature().n();
  const double b = conjugate_exponent(a);
  const double eps_T = concentration(f, T, a).epsilon;
  const double eps_Omega = bandlimited_project(f, Omega, mu, a).epsilon;
  const double factor = mu.c_mu() / std::pow(pi, n) * std::pow(T.measure(), 1.0 / a) *
                        std::pow(Omega.measure(), 1.0 / a);

  r.inputs.a = a;
  r.inputs.b = b;
  r.inputs.measure_T = T.measure();
  r.inputs.measure_Omega = Omega.measure();
  r.inputs.epsilon_T = eps_T;
  r.inputs.epsilon_Omega = eps_Omega;
  r.lhs = (1.0 - eps_Omega - eps_T) / (1.0 + eps_Omega);
  r.rhs = hausdorff_young_constant(n, mu.c_mu(), b) * factor;
  r.rhs_tight = hausdorff_young_constant_tight(n, mu.c_mu(), b) * factor;
  r.decide_by_slack();
  if (r.lhs <= 0.0) r.add_flag(flag::vacuous);
  if (!std::isinf(b)) mark_parseval_dependence(r, mu);
  return r;
}

}  // namespace cliffup
