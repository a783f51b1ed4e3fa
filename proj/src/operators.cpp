#include "cliffup/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cliffup {

Field band_limit(const Field& f, const FrequencyRegion& region, const SqrtMinusOned& mu) {
  if (!(f.grid() == region.grid()))
    throw std::invalid_argument("band_limit: region grid differs from field grid");
  detail::require_same(f.signature(), mu.signature(), "band_limit");
  return icft(restrict_to(cft_fast(f, mu), region), mu);
}

BandlimitedWitness bandlimited_project(const Field& f, const FrequencyRegion& region,
                                       const SqrtMinusOned& mu, double a) {
  const double total = lp_norm(f, a);
  if (!(total > 0.0)) throw std::invalid_argument("bandlimited_project: zero field");
  BandlimitedWitness w{band_limit(f, region, mu), 0.0};
  w.epsilon = lp_norm(f - w.g, a) / total;
  return w;
}

template <Domain D>
RegionMask<D> essential_support(const Sampled<D>& f, double eta, double a) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("essential_support: eta must lie in (0, 1)");
  if (!(a >= 1.0)) throw std::invalid_argument("essential_support: exponent must be >= 1");
  const Eigen::VectorXd moduli = f.moduli();
  const auto points = static_cast<std::size_t>(moduli.size());
  if (points == 0 || !(moduli.maxCoeff() > 0.0))
    throw std::invalid_argument("essential_support: zero field");

  std::vector<Eigen::Index> order(points);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return moduli[x] > moduli[y]; });

  // keep = number of leading points in the mask; the tail is everything after.
  std::size_t keep = points;
  if (std::isinf(a)) {
    const double limit = eta * moduli[order[0]];
    keep = 1;
    while (keep < points && moduli[order[keep]] > limit) ++keep;
  } else {
    // tail[m] = sum_{i >= m} |f_(i)|^a, accumulated from the smallest value up.
    std::vector<double> tail(points + 1, 0.0);
    for (std::size_t m = points; m-- > 0;) tail[m] = tail[m + 1] + std::pow(moduli[order[m]], a);
    const double limit = std::pow(eta, a) * tail[0];
    keep = 0;
    while (keep < points && tail[keep] > limit) ++keep;
  }

  std::vector<std::uint8_t> mask(points, 0);
  for (std::size_t m = 0; m < keep; ++m) mask[static_cast<std::size_t>(order[m])] = 1;
  return RegionMask<D>(f.grid(), std::move(mask));
}

template TimeRegion essential_support(const Field&, double, double);
template FrequencyRegion essential_support(const Spectrum&, double, double);

}  // namespace cliffup
