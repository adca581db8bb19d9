#pragma once

// Reference computations that deliberately avoid the library's padding, projection and
// norm routines. Point values are produced with explicit index loops over the native
// lattice; only the raw DFT is shared.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cbf/field_factory.hpp"
#include "cbf/fft.hpp"
#include "cbf/spectral_ops.hpp"

namespace oracle {

using cbf::Complex;
using cbf::SpectralVelocity;
using cbf::TorusGrid;

/// Deterministic smooth field: amplitudes exp(-decay |k|) with k-hashed phases, so that
/// grids of different N represent truncations of the same underlying function.
inline SpectralVelocity smooth_field(const TorusGrid& g, double decay) {
  std::vector<cbf::ModeAmplitude> modes;
  for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
    if (!g.retained(idx) || g.mirror(idx) < idx) continue;
    const auto& k = g.wavevector(idx);
    const double kn = std::sqrt(static_cast<double>(g.k_squared(idx)));
    cbf::ModeAmplitude m;
    m.k = k;
    for (int c = 0; c < g.dim(); ++c) {
      const double phase = 2.399963 * (7 * k[0] + 13 * k[1] + 17 * k[2]) + 1.1 * c;
      m.amplitude[c] = std::exp(-decay * kn) * Complex(std::cos(phase), std::sin(phase));
    }
    modes.push_back(m);
  }
  return cbf::project_solenoidal(cbf::mode_field(g, modes));
}

/// Scalar or vector component values on the native N lattice from one coefficient block.
inline std::vector<double> native_values(const TorusGrid& g, const std::vector<Complex>& block) {
  std::vector<Complex> buf(block);
  for (std::size_t idx = 0; idx < g.lattice_size(); ++idx)
    for (int d = 0; d < g.dim(); ++d)
      if (g.wavevector(idx)[d] == g.modes() / 2) buf[idx] = 0.0;
  cbf::fft_inplace(buf, g.dim(), g.modes(), cbf::FftDirection::Backward);
  const double inv = 1.0 / static_cast<double>(g.lattice_size());
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * inv;
  return out;
}

inline std::vector<Complex> derivative_block(const TorusGrid& g, const std::vector<Complex>& block, int dir) {
  std::vector<Complex> out(block.size());
  for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
    const auto& k = g.wavevector(idx);
    bool nyq = false;
    for (int d = 0; d < g.dim(); ++d) nyq |= k[d] == g.modes() / 2;
    out[idx] = nyq ? Complex{} : Complex(0.0, g.wavenumber_scale() * k[dir]) * block[idx];
  }
  return out;
}

/// Right-hand side of <Au, C(u)> = int |grad u|^2 |u|^{r-1} + 4 (r-1)/(r+1)^2 int |grad |u|^{(r+1)/2}|^2,
/// by rectangle-rule quadrature on the native lattice.
inline double damping_gradient_identity_rhs(const SpectralVelocity& u, double r) {
  const TorusGrid& g = u.grid();
  const int dim = g.dim();
  const std::size_t pts = g.lattice_size();
  std::vector<std::vector<double>> vals(dim);
  std::vector<double> grad2(pts, 0.0);
  for (int i = 0; i < dim; ++i) {
    std::vector<Complex> block(u.component(i).begin(), u.component(i).end());
    vals[i] = native_values(g, block);
    for (int j = 0; j < dim; ++j) {
      auto d = native_values(g, derivative_block(g, block, j));
      for (std::size_t p = 0; p < pts; ++p) grad2[p] += d[p] * d[p];
    }
  }
  std::vector<Complex> mag(pts);
  double first = 0.0;
  for (std::size_t p = 0; p < pts; ++p) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += vals[i][p] * vals[i][p];
    first += grad2[p] * std::pow(s, 0.5 * (r - 1.0));
    mag[p] = std::pow(s, 0.25 * (r + 1.0));
  }
  cbf::fft_inplace(mag, dim, g.modes(), cbf::FftDirection::Forward);
  double second = 0.0;
  for (int j = 0; j < dim; ++j) {
    auto d = native_values(g, derivative_block(g, mag, j));
    for (double x : d) second += x * x;
  }
  const double cell = std::pow(g.spacing(), dim);
  return cell * (first + 4.0 * (r - 1.0) / ((r + 1.0) * (r + 1.0)) * second);
}

/// Second-order five-point -Laplacian of a 2D periodic array (row-major, n x n).
inline std::vector<double> fd_negative_laplacian_2d(const std::vector<double>& f, int n, double dx) {
  std::vector<double> out(f.size());
  auto at = [&](int i, int j) { return f[((i + n) % n) * n + (j + n) % n]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i * n + j] = (4.0 * at(i, j) - at(i + 1, j) - at(i - 1, j) - at(i, j + 1) - at(i, j - 1)) / (dx * dx);
  return out;
}

/// Ordinary least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
