#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cliffup/operators.hpp"
#include "support.hpp"

using namespace cliffup;
using namespace cliffup::testing;

namespace {

std::vector<double> v(std::initializer_list<double> x) { return x; }

}  // namespace

TEST_CASE("region_from_box measures") {
  const GridSpec g1(1, 16, 2.0);  // dt = 0.25
  const auto unit = region_from_box<Domain::time>(g1, v({0.0}), v({1.0}));
  CHECK(unit.count() == 4);
  CHECK(unit.measure() == 1.0);

  for (int n = 1; n <= 3; ++n) {
    const GridSpec g(n, 8, 1.5);
    std::vector<double> lo(n, -1.5), hi(n, 1.5);
    const auto full = region_from_box<Domain::time>(g, lo, hi);
    CHECK(full.count() == g.point_count());
    CHECK(full.measure() == doctest::Approx(std::pow(3.0, n)).epsilon(1e-14));
  }

  // Degenerate box: empty, measure zero.
  const auto none = region_from_box<Domain::time>(g1, v({1.0}), v({1.0}));
  CHECK(none.count() == 0);
  CHECK(none.measure() == 0.0);
  CHECK_THROWS_AS(region_from_box<Domain::time>(g1, v({0.0, 0.0}), v({1.0, 1.0})),
                  std::invalid_argument);

  // Frequency masks use dxi.
  const auto w = region_from_box<Domain::frequency>(g1, v({-2.0}), v({2.0}));
  CHECK(w.measure() == doctest::Approx(w.count() * g1.frequency_spacing()));
}

TEST_CASE("box measure converges under refinement") {
  double previous = 1.0;
  for (int N : {32, 64, 128}) {
    const GridSpec g(2, N, 3.0);
    const auto box = region_from_box<Domain::time>(g, v({-1.3, -0.45}), v({0.7, 1.1}));
    const double err = std::abs(box.measure() - 2.0 * 1.55);
    CHECK(err <= 2.0 * g.time_spacing() * (2.0 + 1.55));
    CHECK(err <= previous);
    previous = err;
  }
}

TEST_CASE("time_limit") {
  const Signature sig(0, 2);
  const GridSpec g(2, 16, 2.0);
  const Field f = random_field(g, sig);
  CHECK(time_limit(f, TimeRegion::full(g)).values() == f.values());
  CHECK(time_limit(f, TimeRegion::empty(g)).values().isZero(0.0));

  const auto T = region_from_box<Domain::time>(g, v({-1.0, -0.5}), v({1.0, 1.5}));
  const Field Pf = time_limit(f, T);
  CHECK(time_limit(Pf, T).values() == Pf.values());
  for (double a : {1.0, 1.5, 2.0}) {
    const auto c = concentration(f, T, a);
    CHECK(lp_norm(f - Pf, a) == doctest::Approx(c.tail_mass).epsilon(1e-14));
    CHECK(concentration(Pf, T, a).epsilon == 0.0);
  }

  // Linear.
  const Field h = random_field(g, sig);
  const auto alpha = random_multivector(sig);
  CHECK(relative_max_error(time_limit(left_multiply(alpha, f) + h, T),
                           left_multiply(alpha, Pf) + time_limit(h, T)) <= 1e-15);

  const GridSpec other(2, 8, 2.0);
  CHECK_THROWS_AS(time_limit(f, TimeRegion::full(other)), std::invalid_argument);
}

TEST_CASE("band_limit is a projection") {
  for (auto [p, q] : {std::pair{0, 1}, {0, 2}, {1, 1}, {2, 0}}) {
    const Signature sig(p, q);
    const GridSpec g(sig.n(), 16, 3.0);
    const auto mu = default_blade_mu(sig);
    const Field f = random_field(g, sig);
    const double scale = f.values().cwiseAbs().maxCoeff();

    const Field all = band_limit(f, FrequencyRegion::full(g), mu);
    CHECK((all.values() - f.values()).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK(band_limit(f, FrequencyRegion::empty(g), mu).values().isZero(0.0));

    std::vector<double> lo(sig.n(), -2.0), hi(sig.n(), 2.5);
    const auto Omega = region_from_box<Domain::frequency>(g, lo, hi);
    const Field Qf = band_limit(f, Omega, mu);
    const Field QQf = band_limit(Qf, Omega, mu);
    CHECK((QQf.values() - Qf.values()).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK(lp_norm(Qf, 2.0) <= lp_norm(f, 2.0) * (1.0 + 1e-9));

    const Field h = random_field(g, sig);
    const auto alpha = random_multivector(sig);
    CHECK(relative_max_error(band_limit(left_multiply(alpha, f) + h, Omega, mu),
                             left_multiply(alpha, Qf) + band_limit(h, Omega, mu)) <= 1e-9);
  }
  const Signature sig(0, 1);
  const GridSpec g(1, 16, 3.0);
  const Field f = random_field(g, sig);
  CHECK_THROWS_AS(band_limit(f, FrequencyRegion::full(GridSpec(1, 8, 3.0)), default_blade_mu(sig)),
                  std::invalid_argument);
  CHECK_THROWS_AS(band_limit(f, FrequencyRegion::full(g), default_blade_mu(Signature(0, 2))),
                  std::invalid_argument);
}

TEST_CASE("concentration examples") {
  const Signature sig(0, 1);
  const GridSpec g(1, 32, 4.0);
  const Field f = random_field(g, sig);
  CHECK(concentration(f, TimeRegion::empty(g), 2.0).epsilon == 1.0);
  CHECK(concentration(f, TimeRegion::full(g), 2.0).epsilon == 0.0);
  CHECK_THROWS_AS(concentration(Field(g, sig), TimeRegion::full(g), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(concentration(f, TimeRegion::full(GridSpec(1, 16, 4.0)), 2.0),
                  std::invalid_argument);

  // Supported inside R.
  const auto R = region_from_box<Domain::time>(g, v({-1.0}), v({2.0}));
  CHECK(concentration(time_limit(f, R), R, 1.5).epsilon == 0.0);
}

TEST_CASE("Gaussian tail concentration on [-2, 2)") {
  const Signature sig(0, 1);
  const GridSpec g(1, 500, 10.0);
  const Field f = gaussian_field(g, sig);
  const auto R = region_from_box<Domain::time>(g, v({-2.0}), v({2.0}));
  const auto c = concentration(f, R, 2.0);

  // Lattice oracle: plain loop over coordinates.
  double tail = 0.0, total = 0.0;
  for (int j = 0; j < 500; ++j) {
    const double t = -10.0 + j * 0.04;
    const double w = std::exp(-t * t);
    total += w;
    if (t < -2.0 - 1e-12 || t >= 2.0 - 1e-12) tail += w;
  }
  CHECK(c.epsilon == doctest::Approx(std::sqrt(tail / total)).epsilon(1e-12));
  CHECK(c.exponent == 2.0);

  // Continuum: |f|^2 = exp(-t^2), tail ratio erfc(2).
  CHECK(std::abs(c.epsilon / std::sqrt(std::erfc(2.0)) - 1.0) <= 5e-3);
}

TEST_CASE("concentration is monotone in the region") {
  const Signature sig(1, 1);
  const GridSpec g(2, 16, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = random_field(g, sig);
    const double r = uniform(0.2, 1.0);
    const auto small = region_from_box<Domain::time>(g, v({-r, -r}), v({r, r}));
    const auto big = region_from_box<Domain::time>(g, v({-r - 0.5, -r}), v({r + 0.3, r + 0.6}));
    for (double a : {1.0, 1.5, 2.0})
      CHECK(concentration(f, big, a).epsilon <= concentration(f, small, a).epsilon);
  }
}

TEST_CASE("bandlimited_project") {
  const Signature sig(0, 1);
  const GridSpec g(1, 64, 8.0);
  const auto mu = blade_mu(sig, 0b1);
  const Field f = gaussian_field(g, sig);
  const auto Omega = region_from_box<Domain::frequency>(g, v({-1.5}), v({1.5}));

  // a = 2 with blade mu: the ratio is the spectral tail by discrete Parseval.
  const auto w = bandlimited_project(f, Omega, mu, 2.0);
  const double oracle = concentration(cft_direct(f, mu), Omega, 2.0).epsilon;
  CHECK(std::abs(w.epsilon - oracle) <= 1e-9 * oracle + 1e-14);
  CHECK(w.epsilon > 0.0);

  // The witness is bandlimited.
  const Field back = band_limit(w.g, Omega, mu);
  CHECK((back.values() - w.g.values()).cwiseAbs().maxCoeff() <=
        1e-9 * w.g.values().cwiseAbs().maxCoeff());

  CHECK(bandlimited_project(f, FrequencyRegion::full(g), mu, 2.0).epsilon <= 1e-9);
  CHECK(bandlimited_project(w.g, Omega, mu, 1.5).epsilon <= 1e-9);
  CHECK_THROWS_AS(bandlimited_project(Field(g, sig), Omega, mu, 2.0), std::invalid_argument);
}

TEST_CASE("essential_support") {
  const Signature sig(0, 2);
  const GridSpec g(2, 16, 3.0);
  for (double eta : {0.01, 0.1, 0.5}) {
    const Field f = random_decaying_field(g, sig, 1.0);
    for (double a : {1.0, 2.0}) {
      const auto T = essential_support(f, eta, a);
      CHECK(concentration(f, T, a).epsilon <= eta);

      // Dropping the weakest kept point breaks the threshold.
      const Eigen::VectorXd m = f.moduli();
      Eigen::Index weakest = -1;
      for (Eigen::Index i = 0; i < m.size(); ++i)
        if (T.contains(i) && (weakest < 0 || m[i] < m[weakest])) weakest = i;
      auto mask = T.mask();
      mask[static_cast<std::size_t>(weakest)] = 0;
      CHECK(concentration(f, TimeRegion(g, mask), a).epsilon > eta);
    }
  }
  const Field f = random_field(g, sig);
  const auto sup = essential_support(f, 0.3, infinity);
  CHECK(concentration(f, sup, infinity).epsilon <= 0.3);
  CHECK(essential_support(cft_fast(f, default_blade_mu(sig)), 0.05).count() > 0);
  CHECK_THROWS_AS(essential_support(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(essential_support(f, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(essential_support(Field(g, sig), 0.1), std::invalid_argument);
}
