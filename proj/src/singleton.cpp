#include "cbf/singleton.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "cbf/errors.hpp"
#include "cbf/field_factory.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

SpectralVelocity probe_field(const TorusGrid& grid, std::uint64_t seed) {
  return random_field(grid, seed, {.spectral_exponent = 2.0, .k_max = grid.modes() / 4.0, .h_norm = 1.0});
}

double steady_residual(const SpectralVelocity& a, const PhysicsParams& params) {
  RhsEvaluation n = evaluate_drift(a, params);
  SpectralVelocity res = stokes_apply(a);
  res *= params.mu;
  res -= n.value;
  return h_norm(res);
}

SingletonResult find_singleton(const PhysicsParams& params, const SingletonOptions& opt) {
  params.validate();
  if (opt.probes < 2) throw ValidationError("find_singleton: need at least 2 probes");
  const Regime regime = opt.regime.value_or(default_regime(params));
  SingletonResult result{SpectralVelocity(params.grid())};
  result.condition = check_singleton_condition(params, opt.constants, regime);
  if (!result.condition.holds) {
    if (!opt.allow_condition_override)
      throw ValidationError("find_singleton: smallness condition " + to_string(regime) + " does not hold");
    spdlog::warn("find_singleton: condition {} fails (varrho = {}); continuing on request", to_string(regime),
                 result.condition.varrho);
  }

  const TorusGrid& grid = params.grid();
  const ExponentialRk2 stepper(grid, params.mu, opt.h);
  const DriftFunction drift = [&](const SpectralVelocity& v) { return evaluate_drift(v, params); };
  std::vector<SpectralVelocity> probes;
  for (int i = 0; i < opt.probes; ++i) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
    result.probe_seeds.push_back(seed);
    probes.push_back(probe_field(grid, seed));
  }
  spdlog::debug("find_singleton: probe seeds start at {}", opt.seed);

  SolverOptions solver = opt.solver;
  solver.record_lr = false;
  const auto max_steps = static_cast<std::size_t>(std::llround(opt.max_time / opt.h));
  for (std::size_t n = 1; n <= max_steps; ++n) {
    SpectralVelocity before = probes[0];
    for (auto& p : probes) p = guarded_step(stepper, p, drift, solver).state;
    double dmax = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = i + 1; j < probes.size(); ++j) dmax = std::max(dmax, h_norm(probes[i] - probes[j]));
    const double drift_rate = h_norm(probes[0] - before) / opt.h;
    const double t = static_cast<double>(n) * opt.h;
    result.log_times.push_back(t);
    result.log_max_distance.push_back(dmax);
    result.log_drift.push_back(drift_rate);
    result.time = t;
    result.drift = drift_rate;
    if (dmax < opt.tol && drift_rate < opt.tol) {
      result.converged = true;
      break;
    }
  }
  result.a_star = probes[0];
  if (!result.converged)
    spdlog::warn("find_singleton: no contraction to tol {} by t = {}", opt.tol, result.time);
  return result;
}

}  // namespace cbf
