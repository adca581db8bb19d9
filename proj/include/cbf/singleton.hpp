#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbf/physics.hpp"
#include "cbf/solver.hpp"

namespace cbf {

struct SingletonOptions {
  double tol = 1e-8;        ///< pairwise H-distance and drift tolerance
  double max_time = 200.0;
  int probes = 3;
  double h = 0.01;
  std::uint64_t seed = 1;   ///< probe i uses seed + i
  SolverOptions solver;
  /// Proceed with a warning when the smallness condition fails.
  bool allow_condition_override = false;
  /// Regime to check before integrating; the default regime when empty.
  std::optional<Regime> regime;
  EstimateConstants constants;
};

struct SingletonResult {
  SpectralVelocity a_star;
  bool converged = false;
  double time = 0.0;
  double drift = 0.0;  ///< ||u(t+h) - u(t)||_H / h of probe 0 at exit
  std::vector<std::uint64_t> probe_seeds;
  std::vector<double> log_times;
  std::vector<double> log_max_distance;  ///< max pairwise ||u_i - u_j||_H
  std::vector<double> log_drift;
  ConditionReport condition;
};

/// Probe initial datum: Gaussian coefficients with |c_k| ~ |k|^{-2}, |k| <= N/4, ||x||_H = 1.
SpectralVelocity probe_field(const TorusGrid& grid, std::uint64_t seed);

/// Integrates several probes in lockstep until they agree pairwise within tol and the
/// common state is stationary (drift < tol). A run that reaches max_time returns
/// converged = false with the full distance log.
SingletonResult find_singleton(const PhysicsParams& params, const SingletonOptions& options = {});

/// Residual of the steady equation mu A a + B(a) + darcy a + beta C(a) - f in H.
double steady_residual(const SpectralVelocity& a, const PhysicsParams& params);

}  // namespace cbf
