#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cbf/physics.hpp"
#include "cbf/time_stepper.hpp"

namespace cbf {

struct SolverOptions {
  double cfl_safety = 0.4;
  /// Abort when ||u||_H exceeds this value.
  double blowup_guard = 1e8;
  /// Keep every k-th state (0 keeps only the initial and final states).
  std::size_t snapshot_every = 0;
  /// Record int |u|^{r+1} at every step (needed by energy_residual when beta > 0).
  bool record_lr = true;
};

/// Modifications of the deterministic drift used by the pathwise random solvers.
/// The defaults reproduce the deterministic right-hand side exactly, and every
/// modifier at its neutral value is skipped so both paths share the same arithmetic.
struct DriftModifiers {
  double forcing_scale = 1.0;
  double advection_scale = 1.0;
  double damping_scale = 1.0;
  double linear_growth = 0.0;                      ///< adds linear_growth * v
  const SpectralVelocity* shift = nullptr;         ///< nonlinear terms act on v + shift
  const SpectralVelocity* extra_forcing = nullptr; ///< added as is
};

/// N(v) = s_f f - s_B B(w) - beta s_C C(w) - darcy w + g v + extra, with w = v + shift.
RhsEvaluation evaluate_drift(const SpectralVelocity& v, const PhysicsParams& params,
                             const DriftModifiers& modifiers = {});

/// One stepper step followed by the step-size guard and the blow-up guard.
StepOutcome guarded_step(const ExponentialRk2& stepper, const SpectralVelocity& u, const DriftFunction& drift,
                         const SolverOptions& options);

struct Trajectory {
  double mu = 0.0, beta = 0.0, r = 1.0, darcy = 0.0;
  double h = 0.0;
  /// Per accepted step, index n at time times[n].
  std::vector<double> times;
  std::vector<double> h_norm;
  std::vector<double> v_norm;
  std::vector<double> lr_power;       ///< int |u|^{r+1}; NaN when not recorded
  std::vector<double> forcing_work;   ///< (f, u)
  std::vector<double> snapshot_times;
  std::vector<SpectralVelocity> snapshots;

  const SpectralVelocity& final_state() const { return snapshots.back(); }
};

/// Integrates du/dt + mu A u + B(u) + darcy u + beta C(u) = f over [0, T] with step h.
Trajectory simulate(const SpectralVelocity& u0, const PhysicsParams& params, double duration, double h,
                    const SolverOptions& options = {});

/// Energy-equality defect at every recorded time, with trapezoidal time quadrature:
/// ||u(t)||^2 + 2 mu int ||u||_V^2 + 2 beta int ||u||_{L^{r+1}}^{r+1} + 2 darcy int ||u||^2
///   - ||u(0)||^2 - 2 int (f, u).
std::vector<double> energy_residual(const Trajectory& trajectory);

}  // namespace cbf
