#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "cbf/spectral_field.hpp"

namespace cbf {

/// One term a exp(2 pi i k.x / L) + conj(a) exp(-2 pi i k.x / L) of a real field.
struct ModeAmplitude {
  Wavevector k{0, 0, 0};
  std::array<Complex, 3> amplitude{};

  bool operator==(const ModeAmplitude&) const = default;
};

/// Raw (unprojected) field built from a list of mode terms. Repeated modes add up.
SpectralVelocity mode_field(const TorusGrid& grid, const std::vector<ModeAmplitude>& modes);

/// Raw field whose native-lattice point values are f(x); mean and divergence are kept.
SpectralVelocity sample_field(const TorusGrid& grid,
                              const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f);

/// u = (sin(s x) cos(s y), -cos(s x) sin(s y)) with s = 2 pi / L. 2D only.
SpectralVelocity taylor_green(const TorusGrid& grid);

struct RandomFieldOptions {
  double spectral_exponent = 2.0;  ///< |c_k| ~ |k|^{-exponent}
  double k_max = -1.0;             ///< Euclidean cutoff on |k|; negative means N/4
  double h_norm = 1.0;             ///< target ||u||_H; <= 0 leaves the raw scale
};

/// Divergence-free, mean-zero Gaussian random field, reproducible from the seed.
SpectralVelocity random_field(const TorusGrid& grid, std::uint64_t seed,
                              const RandomFieldOptions& options = {});

/// Scales u so that ||u||_H equals target (u must be nonzero).
SpectralVelocity with_h_norm(SpectralVelocity u, double target);

}  // namespace cbf
