#include "cbf/field_factory.hpp"

#include <cmath>
#include <random>

#include "cbf/errors.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

SpectralVelocity mode_field(const TorusGrid& grid, const std::vector<ModeAmplitude>& modes) {
  SpectralVelocity out(grid);
  const double n = std::pow(static_cast<double>(grid.modes()), grid.dim());
  for (const auto& m : modes) {
    const std::size_t idx = grid.index_of(m.k);
    const std::size_t mir = grid.mirror(idx);
    if (!grid.retained(idx))
      throw ValidationError("mode_field: wavevector is zero or outside the retained lattice");
    for (int c = 0; c < grid.dim(); ++c) {
      out(c, idx) += n * m.amplitude[c];
      out(c, mir) += n * std::conj(m.amplitude[c]);
    }
  }
  return out;
}

SpectralVelocity sample_field(const TorusGrid& grid,
                              const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f) {
  const int n = grid.modes();
  const int dim = grid.dim();
  PhysicalField pf{grid, n, {}};
  const std::size_t pts = pf.points();
  pf.values.resize(pts * dim);
  const double dx = grid.spacing();
  for (std::size_t p = 0; p < pts; ++p) {
    std::array<double, 3> x{0, 0, 0};
    std::size_t rem = p;
    for (int d = dim - 1; d >= 0; --d) {
      x[d] = dx * static_cast<double>(rem % n);
      rem /= n;
    }
    const auto v = f(x);
    for (int c = 0; c < dim; ++c) pf.values[c * pts + p] = v[c];
  }
  return from_physical(pf);
}

SpectralVelocity taylor_green(const TorusGrid& grid) {
  if (grid.dim() != 2) throw ValidationError("taylor_green: 2D only");
  const double s = grid.wavenumber_scale();
  return project_solenoidal(sample_field(grid, [s](const std::array<double, 3>& x) {
    return std::array<double, 3>{std::sin(s * x[0]) * std::cos(s * x[1]),
                                 -std::cos(s * x[0]) * std::sin(s * x[1]), 0.0};
  }));
}

SpectralVelocity with_h_norm(SpectralVelocity u, double target) {
  const double cur = h_norm(u);
  if (!(cur > 0.0)) throw ValidationError("with_h_norm: cannot rescale a zero field");
  u *= target / cur;
  return u;
}

SpectralVelocity random_field(const TorusGrid& grid, std::uint64_t seed, const RandomFieldOptions& options) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double k_max = options.k_max < 0.0 ? grid.modes() / 4.0 : options.k_max;
  SpectralVelocity out(grid);
  for (std::size_t idx = 0; idx < grid.lattice_size(); ++idx) {
    const std::size_t mir = grid.mirror(idx);
    if (!grid.retained(idx) || mir < idx) continue;
    const double kn = std::sqrt(static_cast<double>(grid.k_squared(idx)));
    if (kn > k_max) continue;
    const double amp = std::pow(kn, -options.spectral_exponent);
    for (int c = 0; c < grid.dim(); ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(c, idx) = amp * Complex(re, im);
      out(c, mir) = std::conj(out(c, idx));
    }
  }
  out = project_solenoidal(std::move(out));
  if (options.h_norm > 0.0) out = with_h_norm(std::move(out), options.h_norm);
  return out;
}

}  // namespace cbf
