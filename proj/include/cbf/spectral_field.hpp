#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cbf/fft.hpp"
#include "cbf/grid.hpp"

namespace cbf {

/// Vector field on the torus stored as Fourier coefficients on the full N^dim lattice.
///
/// Coefficients follow the unnormalized forward DFT of the point values on the native
/// N-point lattice: u(x_j) = N^{-dim} sum_k c_k exp(2 pi i k.x_j / L). Storage is
/// component-major; each component block is in the grid's row-major lattice order.
///
/// Fields produced by the operators in spectral_ops.hpp are mean-zero, Hermitian
/// (c(-k) = conj c(k)) and divergence-free; raw fields built by hand need not be until
/// they pass through leray_project.
class SpectralVelocity {
 public:
  explicit SpectralVelocity(TorusGrid grid);
  SpectralVelocity(TorusGrid grid, std::vector<Complex> coeffs);

  const TorusGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return grid_.dim(); }

  std::span<const Complex> component(int c) const;
  std::span<Complex> component(int c);

  Complex operator()(int c, std::size_t index) const { return coeffs_[offset(c) + index]; }
  Complex& operator()(int c, std::size_t index) { return coeffs_[offset(c) + index]; }

  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  std::vector<Complex>& coefficients() noexcept { return coeffs_; }

  SpectralVelocity& operator+=(const SpectralVelocity& other);
  SpectralVelocity& operator-=(const SpectralVelocity& other);
  SpectralVelocity& operator*=(double s);
  /// this += s * other
  SpectralVelocity& axpy(double s, const SpectralVelocity& other);

  bool operator==(const SpectralVelocity& other) const;

 private:
  std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.lattice_size(); }

  TorusGrid grid_;
  std::vector<Complex> coeffs_;
};

SpectralVelocity operator+(SpectralVelocity a, const SpectralVelocity& b);
SpectralVelocity operator-(SpectralVelocity a, const SpectralVelocity& b);
SpectralVelocity operator*(double s, SpectralVelocity a);
SpectralVelocity operator*(SpectralVelocity a, double s);

/// Point values on an M^dim collocation lattice (M = N, or a padded size), component-major.
struct PhysicalField {
  TorusGrid grid;
  int lattice_modes;
  std::vector<double> values;

  std::size_t points() const;
  std::span<const double> component(int c) const;
  std::span<double> component(int c);
};

}  // namespace cbf
