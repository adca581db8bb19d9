#include "cbf/random_dynamics.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "cbf/errors.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::None: return "none";
    case NoiseMode::Additive: return "additive";
    case NoiseMode::Multiplicative: return "multiplicative";
  }
  return "none";
}

NoiseMode noise_mode_from_string(const std::string& text) {
  if (text == "none") return NoiseMode::None;
  if (text == "additive") return NoiseMode::Additive;
  if (text == "multiplicative") return NoiseMode::Multiplicative;
  throw ValidationError("unknown noise mode '" + text + "' (expected none, additive or multiplicative)");
}

void NoiseConfig::validate(const TorusGrid& grid) const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("noise epsilon must lie in [0, 1]");
  if (!(ou_alpha > 0.0) || !std::isfinite(ou_alpha)) throw ValidationError("noise ou_alpha must be positive");
  if (mode == NoiseMode::Additive) {
    if (grid.dim() != 2) throw ValidationError("additive noise is only supported in 2D");
    if (!phi) throw ValidationError("additive noise needs a profile phi");
    require_same_grid(phi->grid(), grid, "additive noise profile");
    if ((*phi)(0, 0) != Complex{} || (grid.dim() > 1 && (*phi)(1, 0) != Complex{}))
      throw ValidationError("noise profile phi must have zero mean");
    if (max_divergence(*phi) > 1e-10) throw ValidationError("noise profile phi must be divergence-free");
    const double kmax2 = grid.modes() * grid.modes() / 16.0;
    for (std::size_t i = 0; i < grid.lattice_size(); ++i) {
      if (grid.k_squared(i) <= kmax2) continue;
      for (int c = 0; c < grid.dim(); ++c)
        if ((*phi)(c, i) != Complex{}) throw ValidationError("noise profile phi must be band-limited to |k| <= N/4");
    }
  }
}

SpectralVelocity additive_reconstruct(const SpectralVelocity& v, const NoiseConfig& noise, double z) {
  if (noise.epsilon == 0.0 || !noise.phi) return v;
  SpectralVelocity u = v;
  u.axpy(noise.epsilon * z, *noise.phi);
  return u;
}

SpectralVelocity multiplicative_reconstruct(const SpectralVelocity& v, const NoiseConfig& noise, double z) {
  if (noise.epsilon == 0.0) return v;
  return v * std::exp(noise.epsilon * z);
}

namespace {

using ModifierFactory = std::function<DriftModifiers(double z, SpectralVelocity& shift, SpectralVelocity& extra)>;
using Reconstruct = std::function<SpectralVelocity(const SpectralVelocity&, double z)>;

RandomTrajectory integrate(const SpectralVelocity& v0, const PhysicsParams& params, const OUPath& ou, double t0,
                           double t1, double h, const SolverOptions& options, const ModifierFactory& modifiers,
                           const Reconstruct& reconstruct, const char* who) {
  params.validate();
  require_same_grid(v0.grid(), params.grid(), who);
  if (std::abs(ou.step() - h) > 1e-12 * h) {
    std::ostringstream os;
    os << who << ": step " << h << " differs from the OU lattice step " << ou.step();
    throw ValidationError(os.str());
  }
  if (!(t0 <= t1)) throw ValidationError(std::string(who) + ": need t0 <= t1");
  if (max_divergence(v0) > 1e-10 || v0(0, 0) != Complex{})
    throw ValidationError(std::string(who) + ": initial state must be mean-zero and divergence-free");
  const long j0 = ou.index_of(t0);
  const long j1 = ou.index_of(t1);

  const ExponentialRk2 stepper(v0.grid(), params.mu, h);
  SpectralVelocity shift(v0.grid()), extra(v0.grid());
  RandomTrajectory tr;
  auto keep = [&](long j, const SpectralVelocity& v) {
    const double z = ou.at_index(j);
    tr.times.push_back(static_cast<double>(j) * h);
    tr.z.push_back(z);
    tr.v.push_back(v);
    tr.u.push_back(reconstruct(v, z));
  };

  SpectralVelocity v = v0;
  keep(j0, v);
  for (long j = j0; j < j1; ++j) {
    const DriftModifiers m = modifiers(ou.at_index(j), shift, extra);
    const DriftFunction drift = [&](const SpectralVelocity& w) { return evaluate_drift(w, params, m); };
    v = guarded_step(stepper, v, drift, options).state;
    const auto done = static_cast<std::size_t>(j + 1 - j0);
    if (j + 1 == j1 || (options.snapshot_every > 0 && done % options.snapshot_every == 0)) keep(j + 1, v);
  }
  return tr;
}

}  // namespace

RandomTrajectory solve_additive_2d(const SpectralVelocity& v0, const PhysicsParams& params, const NoiseConfig& noise,
                                   const OUPath& ou, double t0, double t1, double h, const SolverOptions& options) {
  if (noise.mode != NoiseMode::Additive) throw ValidationError("solve_additive_2d: noise mode must be additive");
  noise.validate(params.grid());
  // eps z (alpha Phi - mu A Phi) enters as forcing; eps z Phi shifts the nonlinear terms.
  SpectralVelocity base = *noise.phi * noise.ou_alpha;
  base.axpy(-params.mu, stokes_apply(*noise.phi));
  const double eps = noise.epsilon;
  const ModifierFactory mods = [&](double z, SpectralVelocity& shift, SpectralVelocity& extra) {
    DriftModifiers m;
    if (eps == 0.0) return m;
    shift = *noise.phi * (eps * z);
    extra = base * (eps * z);
    m.shift = &shift;
    m.extra_forcing = &extra;
    return m;
  };
  const Reconstruct rec = [&](const SpectralVelocity& v, double z) { return additive_reconstruct(v, noise, z); };
  return integrate(v0, params, ou, t0, t1, h, options, mods, rec, "solve_additive_2d");
}

RandomTrajectory solve_multiplicative(const SpectralVelocity& v0, const PhysicsParams& params,
                                      const NoiseConfig& noise, const OUPath& ou, double t0, double t1, double h,
                                      const SolverOptions& options) {
  if (noise.mode != NoiseMode::Multiplicative)
    throw ValidationError("solve_multiplicative: noise mode must be multiplicative");
  noise.validate(params.grid());
  const double eps = noise.epsilon;
  const ModifierFactory mods = [&](double z, SpectralVelocity&, SpectralVelocity&) {
    DriftModifiers m;
    if (eps == 0.0) return m;
    m.forcing_scale = std::exp(-eps * z);
    m.advection_scale = std::exp(eps * z);
    m.damping_scale = std::exp(eps * (params.r - 1.0) * z);
    m.linear_growth = eps * noise.ou_alpha * z;
    return m;
  };
  const Reconstruct rec = [&](const SpectralVelocity& v, double z) { return multiplicative_reconstruct(v, noise, z); };
  return integrate(v0, params, ou, t0, t1, h, options, mods, rec, "solve_multiplicative");
}

RandomTrajectory solve_random(const SpectralVelocity& v0, const PhysicsParams& params, const NoiseConfig& noise,
                              const OUPath& ou, double t0, double t1, double h, const SolverOptions& options) {
  switch (noise.mode) {
    case NoiseMode::Additive: return solve_additive_2d(v0, params, noise, ou, t0, t1, h, options);
    case NoiseMode::Multiplicative: return solve_multiplicative(v0, params, noise, ou, t0, t1, h, options);
    case NoiseMode::None: break;
  }
  noise.validate(params.grid());
  const ModifierFactory mods = [](double, SpectralVelocity&, SpectralVelocity&) { return DriftModifiers{}; };
  const Reconstruct rec = [](const SpectralVelocity& v, double) { return v; };
  return integrate(v0, params, ou, t0, t1, h, options, mods, rec, "solve_random");
}

namespace {

SpectralVelocity to_transformed(const SpectralVelocity& u, const NoiseConfig& noise, double z) {
  switch (noise.mode) {
    case NoiseMode::Additive: return additive_reconstruct(u, noise, -z);
    case NoiseMode::Multiplicative: return multiplicative_reconstruct(u, noise, -z);
    case NoiseMode::None: break;
  }
  return u;
}

}  // namespace

PullbackSample pullback_sample(const PhysicsParams& params, const NoiseConfig& noise, double t_pull, double h,
                               const PullbackOptions& options) {
  if (!(t_pull > 0.0)) throw ValidationError("pullback_sample: t_pull must be positive");
  noise.validate(params.grid());
  const SpectralVelocity start = options.initial.value_or(SpectralVelocity(params.grid()));
  require_same_grid(start.grid(), params.grid(), "pullback_sample");
  SolverOptions solver = options.solver;
  solver.snapshot_every = 0;

  const double horizon = options.doubling_check ? 2.0 * t_pull : t_pull;
  const OUPath ou = sample_ou(noise.seed, noise.ou_alpha, -horizon, 0.0, h);
  auto run_from = [&](double t) {
    const double t0 = static_cast<double>(ou.index_of(-t)) * h;
    const SpectralVelocity v0 = to_transformed(start, noise, ou.at(t0));
    return solve_random(v0, params, noise, ou, t0, 0.0, h, solver);
  };

  const RandomTrajectory tr = run_from(t_pull);
  PullbackSample s{tr.final_v(), tr.final_u()};
  s.t_pull = t_pull;
  s.h = h;
  s.seed = noise.seed;
  s.epsilon = noise.epsilon;
  s.mode = noise.mode;
  s.z0 = tr.z.back();
  if (options.doubling_check) {
    const RandomTrajectory longer = run_from(2.0 * t_pull);
    s.doubling_change = h_norm(longer.final_v() - s.v);
    s.converged = *s.doubling_change <= options.tolerance;
    if (!s.converged)
      spdlog::warn("pullback_sample: seed {} eps {}: doubling t_pull = {} changes the sample by {} > {}", noise.seed,
                   noise.epsilon, t_pull, *s.doubling_change, options.tolerance);
  }
  return s;
}

}  // namespace cbf
