#include "cbf/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cbf/errors.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

RhsEvaluation evaluate_drift(const SpectralVelocity& v, const PhysicsParams& p, const DriftModifiers& m) {
  std::optional<SpectralVelocity> shifted;
  if (m.shift != nullptr) shifted = v + *m.shift;
  const SpectralVelocity& w = shifted ? *shifted : v;

  NonlinearTerms nt = nonlinear_terms(w, p.r, p.beta != 0.0);
  SpectralVelocity out = p.forcing;
  if (m.forcing_scale != 1.0) out *= m.forcing_scale;
  out.axpy(-m.advection_scale, nt.advection);
  if (nt.damping) out.axpy(-(p.beta * m.damping_scale), *nt.damping);
  if (p.darcy != 0.0) out.axpy(-p.darcy, w);
  if (m.linear_growth != 0.0) out.axpy(m.linear_growth, v);
  if (m.extra_forcing != nullptr) out += *m.extra_forcing;
  return {std::move(out), nt.max_speed, nt.lr_power};
}

StepOutcome guarded_step(const ExponentialRk2& stepper, const SpectralVelocity& u, const DriftFunction& drift,
                         const SolverOptions& options) {
  StepOutcome out = stepper.step(u, drift);
  const double dx = u.grid().spacing();
  if (out.max_speed > 0.0 && stepper.step_size() > options.cfl_safety * dx / out.max_speed) {
    std::ostringstream os;
    os << "step guard: h = " << stepper.step_size() << " exceeds cfl_safety * dx / max|u| = "
       << options.cfl_safety * dx / out.max_speed;
    throw StepGuardError(os.str());
  }
  const double norm = h_norm(out.state);
  if (!std::isfinite(norm)) throw BlowUpError("blow-up: non-finite state detected");
  if (norm > options.blowup_guard) {
    std::ostringstream os;
    os << "blow-up: ||u||_H = " << norm << " exceeds guard " << options.blowup_guard;
    throw BlowUpError(os.str());
  }
  return out;
}

Trajectory simulate(const SpectralVelocity& u0, const PhysicsParams& params, double duration, double h,
                    const SolverOptions& options) {
  params.validate();
  require_same_grid(u0.grid(), params.grid(), "simulate");
  if (!(duration >= 0.0)) throw ValidationError("simulate: duration must be >= 0");
  if (max_divergence(u0) > 1e-10 || u0(0, 0) != Complex{})
    throw ValidationError("simulate: initial state must be mean-zero and divergence-free");

  const ExponentialRk2 stepper(u0.grid(), params.mu, h);
  const auto steps = static_cast<std::size_t>(std::llround(duration / h));
  const DriftFunction drift = [&](const SpectralVelocity& v) { return evaluate_drift(v, params); };

  Trajectory tr;
  tr.mu = params.mu;
  tr.beta = params.beta;
  tr.r = params.r;
  tr.darcy = params.darcy;
  tr.h = h;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto record = [&](std::size_t n, const SpectralVelocity& u, std::optional<double> lr) {
    tr.times.push_back(static_cast<double>(n) * h);
    tr.h_norm.push_back(h_norm(u));
    tr.v_norm.push_back(v_norm(u));
    tr.forcing_work.push_back(inner_product(params.forcing, u));
    if (!lr && options.record_lr) lr = lr_power(u, params.r);
    tr.lr_power.push_back(lr.value_or(nan));
  };

  SpectralVelocity u = u0;
  tr.snapshot_times.push_back(0.0);
  tr.snapshots.push_back(u);
  for (std::size_t n = 0; n < steps; ++n) {
    StepOutcome out = guarded_step(stepper, u, drift, options);
    record(n, u, out.lr_power);
    u = std::move(out.state);
    if (options.snapshot_every > 0 && (n + 1) % options.snapshot_every == 0 && n + 1 < steps) {
      tr.snapshot_times.push_back(static_cast<double>(n + 1) * h);
      tr.snapshots.push_back(u);
    }
  }
  record(steps, u, std::nullopt);
  if (steps > 0) {
    tr.snapshot_times.push_back(static_cast<double>(steps) * h);
    tr.snapshots.push_back(u);
  }
  return tr;
}

std::vector<double> energy_residual(const Trajectory& tr) {
  const std::size_t n = tr.times.size();
  std::vector<double> res(n, 0.0);
  if (n == 0) return res;
  auto density = [&](std::size_t i) {
    double d = 2.0 * tr.mu * tr.v_norm[i] * tr.v_norm[i] - 2.0 * tr.forcing_work[i];
    if (tr.beta != 0.0) d += 2.0 * tr.beta * tr.lr_power[i];
    if (tr.darcy != 0.0) d += 2.0 * tr.darcy * tr.h_norm[i] * tr.h_norm[i];
    return d;
  };
  const double e0 = tr.h_norm[0] * tr.h_norm[0];
  double integral = 0.0;
  double prev = density(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = density(i);
    integral += 0.5 * (tr.times[i] - tr.times[i - 1]) * (prev + cur);
    prev = cur;
    res[i] = tr.h_norm[i] * tr.h_norm[i] + integral - e0;
  }
  return res;
}

}  // namespace cbf
