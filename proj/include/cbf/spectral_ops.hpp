#pragma once

#include <optional>

#include "cbf/spectral_field.hpp"

namespace cbf {

/// Leray projection I - k k^T / |k|^2 applied mode by mode; also drops every
/// non-retained (Nyquist) mode. Throws MeanViolationError when any k = 0
/// coefficient is nonzero. Idempotent bit for bit.
SpectralVelocity leray_project(const SpectralVelocity& raw);

/// Same as leray_project but silently discards the mean instead of rejecting it.
/// This is the projection onto mean-zero solenoidal fields used after pointwise products.
SpectralVelocity project_solenoidal(SpectralVelocity raw);

/// Stokes operator A = -P Delta: multiplies mode k by (4 pi^2 / L^2) |k|^2.
SpectralVelocity stokes_apply(const SpectralVelocity& u);

/// B(u, v) = P (u . grad) v evaluated on the 3/2-padded lattice.
SpectralVelocity bilinear_B(const SpectralVelocity& u, const SpectralVelocity& v);

/// b(u, v, w) = <B(u, v), w>.
double trilinear_b(const SpectralVelocity& u, const SpectralVelocity& v,
                   const SpectralVelocity& w);

/// C(u) = P(|u|^{r-1} u) evaluated on the damping lattice. r = 1 returns u unchanged.
SpectralVelocity damping_C(const SpectralVelocity& u, double r);

/// L^2 inner product over the box.
double inner_product(const SpectralVelocity& u, const SpectralVelocity& v);

struct FieldNorms {
  double h_norm = 0.0;
  double v_norm = 0.0;
  double a_norm = 0.0;
  double lr_norm = 0.0;  ///< (int |u|^{r+1})^{1/(r+1)}
};

FieldNorms norms(const SpectralVelocity& u, double r);
double h_norm(const SpectralVelocity& u);
double v_norm(const SpectralVelocity& u);
double a_norm(const SpectralVelocity& u);
/// int |u|^{r+1} dx by collocation on the damping lattice.
double lr_power(const SpectralVelocity& u, double r);
double lr_norm(const SpectralVelocity& u, double r);

/// max over k != 0 of |k . c_k| / max(1, |c_k|).
double max_divergence(const SpectralVelocity& u);
/// max over k of |c(-k) - conj c(k)|.
double hermitian_defect(const SpectralVelocity& u);

/// Point values on an M^dim lattice (M >= N). Nyquist modes are ignored.
PhysicalField to_physical(const SpectralVelocity& u, int lattice_modes);
/// Gradient d_j u_i on an M^dim lattice, stored as component i * dim + j.
PhysicalField to_physical_gradient(const SpectralVelocity& u, int lattice_modes);
/// Forward transform truncated to the native lattice and made exactly Hermitian.
/// The mean is kept and no projection is applied.
SpectralVelocity from_physical(const PhysicalField& field);

double max_speed(const SpectralVelocity& u);

/// B(u, u) and, optionally, C(u) from one call; the solver's right-hand side.
struct NonlinearTerms {
  SpectralVelocity advection;
  std::optional<SpectralVelocity> damping;
  double max_speed = 0.0;
  /// int |u|^{r+1}; only filled when damping was evaluated.
  std::optional<double> lr_power;
};

NonlinearTerms nonlinear_terms(const SpectralVelocity& u, double r, bool with_damping);

}  // namespace cbf
