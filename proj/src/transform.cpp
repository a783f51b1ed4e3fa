#include "cliffup/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <numbers>
#include <vector>

#include "cliffup/parallel.hpp"

namespace cliffup {

double u_phase(std::span<const double> t, std::span<const double> xi) {
  if (t.size() != xi.size())
    throw std::invalid_argument("u_phase: dimension mismatch (" + std::to_string(t.size()) +
                                " vs " + std::to_string(xi.size()) + ")");
  double u = 0.0;
  for (std::size_t l = 0; l < t.size(); ++l) u += t[l] * xi[l];
  return u;
}

namespace detail {

// Per axis, with t_j = -L + j 2L/N and xi_k = pi (k - N/2) / L,
//   exp(-i t_j xi_k) = (-1)^{N/2 + j + k} exp(-2 pi i j k / N),
// symmetric in (j, k). The n-axis kernel is the product over axes.
Eigen::MatrixXcd lattice_dft(const GridSpec& grid, const Eigen::MatrixXd& values) {
  const int n = grid.dimension();
  const int N = grid.samples_per_axis();
  const Eigen::Index points = grid.point_count();

  Eigen::VectorXd parity(points);
  for (Eigen::Index i = 0; i < points; ++i) {
    const auto idx = grid.multi_index(i);
    int s = 0;
    for (int l = 0; l < n; ++l) s += idx[l];
    parity[i] = (s & 1) ? -1.0 : 1.0;
  }
  const double global = ((n * (N / 2)) & 1) ? -1.0 : 1.0;

  Eigen::MatrixXcd out(points, values.cols());
  parallel_for(values.cols(), [&](std::int64_t c) {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> data(static_cast<std::size_t>(points));
    for (Eigen::Index i = 0; i < points; ++i) data[i] = parity[i] * values(i, c);

    std::vector<std::complex<double>> line(N), spectrum(N);
    Eigen::Index stride = points;
    for (int l = 0; l < n; ++l) {
      stride /= N;
      const Eigen::Index outer = points / (stride * N);
      for (Eigen::Index o = 0; o < outer; ++o) {
        for (Eigen::Index in = 0; in < stride; ++in) {
          const Eigen::Index base = o * N * stride + in;
          for (int m = 0; m < N; ++m) line[m] = data[base + m * stride];
          fft.fwd(spectrum, line);
          for (int m = 0; m < N; ++m) data[base + m * stride] = spectrum[m];
        }
      }
    }
    for (Eigen::Index i = 0; i < points; ++i) out(i, c) = global * parity[i] * data[i];
  });
  return out;
}

namespace {

// sum_j values_j * exp_mu(sign * u(a_j, b_k)) for every output point k.
Eigen::MatrixXd direct_sum(const GridSpec& grid, Domain from, const Eigen::MatrixXd& values,
                           const SqrtMinusOned& mu, double sign) {
  const Signature& sig = mu.signature();
  const Coordinates src = grid.coordinates(from);
  const Coordinates dst =
      grid.coordinates(from == Domain::time ? Domain::frequency : Domain::time);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = values;
  const Eigen::Index points = grid.point_count();
  const auto n = static_cast<std::size_t>(grid.dimension());

  Eigen::MatrixXd out(points, values.cols());
  parallel_for(points, [&](std::int64_t k) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(values.cols());
    const std::span<const double> target(dst.row(k).data(), n);
    for (Eigen::Index j = 0; j < points; ++j) {
      const double theta = u_phase(std::span<const double>(src.row(j).data(), n), target);
      const Multivectord kernel = exp_mu(sign * theta, mu);
      multiply_accumulate(sig, rows.row(j), kernel.coeffs(), acc);
    }
    out.row(k) = acc.transpose();
  });
  return out;
}

}  // namespace
}  // namespace detail

Spectrum cft_direct(const Field& f, const SqrtMinusOned& mu) {
  detail::require_transformable(f.signature(), f.empty(), mu, "cft_direct");
  Eigen::MatrixXd values = detail::direct_sum(f.grid(), Domain::time, f.values(), mu, -1.0);
  values *= f.grid().cell_volume(Domain::time);
  return Spectrum(f.grid(), f.signature(), std::move(values));
}

Spectrum cft_fast(const Field& f, const SqrtMinusOned& mu) {
  detail::require_transformable(f.signature(), f.empty(), mu, "cft_fast");
  const Eigen::MatrixXcd z = detail::lattice_dft(f.grid(), f.values());
  // z = Cos[f] - i Sin[f]
  const Eigen::MatrixXd cos_part = z.real();
  const Eigen::MatrixXd sin_part = -z.imag();
  Eigen::MatrixXd values = cos_part - sin_part * right_multiplication_matrix(mu.mu());
  values *= f.grid().cell_volume(Domain::time);
  return Spectrum(f.grid(), f.signature(), std::move(values));
}

Field icft(const Spectrum& spectrum, const SqrtMinusOned& mu) {
  detail::require_transformable(spectrum.signature(), spectrum.empty(), mu, "icft");
  const GridSpec& grid = spectrum.grid();
  const Eigen::MatrixXcd z = detail::lattice_dft(grid, spectrum.values());
  const Eigen::MatrixXd cos_part = z.real();
  const Eigen::MatrixXd sin_part = -z.imag();
  Eigen::MatrixXd values = cos_part + sin_part * right_multiplication_matrix(mu.mu());
  values *= grid.cell_volume(Domain::frequency) /
            std::pow(2.0 * std::numbers::pi, grid.dimension());
  return Field(grid, spectrum.signature(), std::move(values));
}

Field icft_direct(const Spectrum& spectrum, const SqrtMinusOned& mu) {
  detail::require_transformable(spectrum.signature(), spectrum.empty(), mu, "icft_direct");
  const GridSpec& grid = spectrum.grid();
  Eigen::MatrixXd values =
      detail::direct_sum(grid, Domain::frequency, spectrum.values(), mu, +1.0);
  values *= grid.cell_volume(Domain::frequency) /
            std::pow(2.0 * std::numbers::pi, grid.dimension());
  return Field(grid, spectrum.signature(), std::move(values));
}

}  // namespace cliffup
