#include "cbf/time_stepper.hpp"

#include <algorithm>
#include <cmath>

#include "cbf/errors.hpp"

namespace cbf {

double phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-2) {
    // Taylor series sum z^j / (j + 2)!
    double term = 0.5, sum = 0.5;
    for (int j = 1; j < 8; ++j) {
      term *= z / (j + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

ExponentialRk2::ExponentialRk2(const TorusGrid& grid, double mu, double h) : grid_(grid), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("solver.h: must be > 0");
  const std::size_t n = grid.lattice_size();
  decay_.resize(n);
  phi1_.resize(n);
  phi2_.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double z = -mu * grid.lambda1() * grid.k_squared(idx) * h;
    decay_[idx] = std::exp(z);
    phi1_[idx] = h * phi1(z);
    phi2_[idx] = h * phi2(z);
  }
}

StepOutcome ExponentialRk2::step(const SpectralVelocity& u, const DriftFunction& drift) const {
  require_same_grid(grid_, u.grid(), "ExponentialRk2::step");
  const std::size_t n = grid_.lattice_size();
  const int dim = grid_.dim();

  RhsEvaluation n0 = drift(u);
  SpectralVelocity a(grid_);
  for (int c = 0; c < dim; ++c)
    for (std::size_t idx = 0; idx < n; ++idx)
      a(c, idx) = decay_[idx] * u(c, idx) + phi1_[idx] * n0.value(c, idx);

  RhsEvaluation n1 = drift(a);
  for (int c = 0; c < dim; ++c)
    for (std::size_t idx = 0; idx < n; ++idx)
      a(c, idx) += phi2_[idx] * (n1.value(c, idx) - n0.value(c, idx));

  return {std::move(a), std::max(n0.max_speed, n1.max_speed), n0.lr_power};
}

}  // namespace cbf
