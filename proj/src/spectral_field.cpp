#include "cbf/spectral_field.hpp"

#include "cbf/errors.hpp"

namespace cbf {

SpectralVelocity::SpectralVelocity(TorusGrid grid)
    : grid_(std::move(grid)), coeffs_(grid_.lattice_size() * grid_.dim()) {}

SpectralVelocity::SpectralVelocity(TorusGrid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.lattice_size() * grid_.dim())
    throw ValidationError("SpectralVelocity: coefficient array does not match the grid");
}

std::span<const Complex> SpectralVelocity::component(int c) const {
  return {coeffs_.data() + offset(c), grid_.lattice_size()};
}

std::span<Complex> SpectralVelocity::component(int c) {
  return {coeffs_.data() + offset(c), grid_.lattice_size()};
}

SpectralVelocity& SpectralVelocity::operator+=(const SpectralVelocity& other) {
  require_same_grid(grid_, other.grid_, "add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralVelocity& SpectralVelocity::operator-=(const SpectralVelocity& other) {
  require_same_grid(grid_, other.grid_, "subtract");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralVelocity& SpectralVelocity::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralVelocity& SpectralVelocity::axpy(double s, const SpectralVelocity& other) {
  require_same_grid(grid_, other.grid_, "axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

bool SpectralVelocity::operator==(const SpectralVelocity& other) const {
  return grid_ == other.grid_ && coeffs_ == other.coeffs_;
}

SpectralVelocity operator+(SpectralVelocity a, const SpectralVelocity& b) { return a += b; }
SpectralVelocity operator-(SpectralVelocity a, const SpectralVelocity& b) { return a -= b; }
SpectralVelocity operator*(double s, SpectralVelocity a) { return a *= s; }
SpectralVelocity operator*(SpectralVelocity a, double s) { return a *= s; }

std::size_t PhysicalField::points() const {
  std::size_t n = 1;
  for (int d = 0; d < grid.dim(); ++d) n *= static_cast<std::size_t>(lattice_modes);
  return n;
}

std::span<const double> PhysicalField::component(int c) const {
  return {values.data() + static_cast<std::size_t>(c) * points(), points()};
}

std::span<double> PhysicalField::component(int c) {
  return {values.data() + static_cast<std::size_t>(c) * points(), points()};
}

}  // namespace cbf
