#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace cbf {

using Wavevector = std::array<int, 3>;

/// Periodic box [0, L]^dim resolved by N Fourier modes per direction.
///
/// Lattice indices follow FFT order in every direction (0, 1, ..., N/2, -N/2+1, ..., -1)
/// and are laid out row-major with the last direction fastest. The Nyquist plane
/// k_i = N/2 is never retained, so the retained set is symmetric under k -> -k.
class TorusGrid {
 public:
  TorusGrid(int dim, int modes, double period, double dealias_factor = 1.5);

  int dim() const noexcept { return dim_; }
  int modes() const noexcept { return modes_; }
  double period() const noexcept { return period_; }
  double dealias_factor() const noexcept { return dealias_factor_; }

  /// N^dim.
  std::size_t lattice_size() const noexcept { return tables_->size; }
  /// Collocation size for quadratic products.
  int padded_modes() const noexcept { return padded_modes_; }
  /// Collocation size for the non-polynomial damping term (at least 2N).
  int damping_modes() const noexcept { return damping_modes_; }

  /// Smallest Stokes eigenvalue 4 pi^2 / L^2.
  double lambda1() const noexcept;
  /// 2 pi / L, the factor turning integer wavevectors into physical ones.
  double wavenumber_scale() const noexcept;
  /// L / N.
  double spacing() const noexcept { return period_ / modes_; }

  const Wavevector& wavevector(std::size_t index) const { return tables_->k[index]; }
  /// Integer |k|^2.
  int k_squared(std::size_t index) const { return tables_->k2[index]; }
  bool retained(std::size_t index) const { return tables_->retained[index] != 0; }
  /// Index of -k.
  std::size_t mirror(std::size_t index) const { return tables_->mirror[index]; }
  /// Index of an integer wavevector; components must lie in (-N/2, N/2].
  std::size_t index_of(const Wavevector& k) const;

  bool operator==(const TorusGrid& other) const noexcept;

 private:
  struct Tables {
    std::size_t size = 0;
    std::vector<Wavevector> k;
    std::vector<int> k2;
    std::vector<char> retained;
    std::vector<std::size_t> mirror;
  };

  int dim_;
  int modes_;
  double period_;
  double dealias_factor_;
  int padded_modes_;
  int damping_modes_;
  std::shared_ptr<const Tables> tables_;
};

/// Signed wavenumber of FFT-ordered position j on an n-point axis.
inline int fft_wavenumber(int j, int n) { return j <= n / 2 ? j : j - n; }

/// Throws ValidationError when the grids differ.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* operation);

}  // namespace cbf
