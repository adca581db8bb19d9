#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbf/physics.hpp"
#include "cbf/solver.hpp"
#include "cbf/stochastic.hpp"

namespace cbf {

enum class NoiseMode { None, Additive, Multiplicative };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& text);

struct NoiseConfig {
  NoiseMode mode = NoiseMode::None;
  /// Noise intensity in [0, 1]; 0 reproduces the deterministic system.
  double epsilon = 0.0;
  /// Spatial profile of additive noise; divergence-free, mean-zero, |k| <= N/4.
  std::optional<SpectralVelocity> phi;
  double ou_alpha = 1.0;
  std::uint64_t seed = 0;

  /// Throws ValidationError; 3D additive noise is rejected.
  void validate(const TorusGrid& grid) const;
};

struct RandomTrajectory {
  std::vector<double> times;  ///< output times (lattice)
  std::vector<double> z;      ///< z(theta_t omega) at the output times
  std::vector<SpectralVelocity> v;
  std::vector<SpectralVelocity> u;

  const SpectralVelocity& final_v() const { return v.back(); }
  const SpectralVelocity& final_u() const { return u.back(); }
};

/// u = v + eps z Phi.
SpectralVelocity additive_reconstruct(const SpectralVelocity& v, const NoiseConfig& noise, double z);
/// u = e^{eps z} v.
SpectralVelocity multiplicative_reconstruct(const SpectralVelocity& v, const NoiseConfig& noise, double z);

/// Transformed additive system on [t0, t1] (2D), z frozen at the left end of each step.
/// snapshot_every in options selects intermediate outputs; the end points are always kept.
RandomTrajectory solve_additive_2d(const SpectralVelocity& v0, const PhysicsParams& params, const NoiseConfig& noise,
                                   const OUPath& ou, double t0, double t1, double h,
                                   const SolverOptions& options = {});

/// Transformed multiplicative system on [t0, t1] (2D, or 3D with r >= 3).
RandomTrajectory solve_multiplicative(const SpectralVelocity& v0, const PhysicsParams& params,
                                      const NoiseConfig& noise, const OUPath& ou, double t0, double t1, double h,
                                      const SolverOptions& options = {});

/// Dispatch on noise.mode; mode None integrates the deterministic system with the same stepping.
RandomTrajectory solve_random(const SpectralVelocity& v0, const PhysicsParams& params, const NoiseConfig& noise,
                              const OUPath& ou, double t0, double t1, double h, const SolverOptions& options = {});

struct PullbackOptions {
  /// Start state u(-t_pull); the zero field when empty.
  std::optional<SpectralVelocity> initial;
  /// Also integrate from -2 t_pull and compare at time 0.
  bool doubling_check = true;
  double tolerance = 1e-4;
  SolverOptions solver;
};

struct PullbackSample {
  SpectralVelocity v;  ///< transformed state at time 0
  SpectralVelocity u;  ///< reconstructed physical state at time 0
  double t_pull = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  NoiseMode mode = NoiseMode::None;
  double z0 = 0.0;
  /// ||v(t_pull) - v(2 t_pull)||_H when the doubling check ran.
  std::optional<double> doubling_change;
  bool converged = true;
};

PullbackSample pullback_sample(const PhysicsParams& params, const NoiseConfig& noise, double t_pull, double h,
                               const PullbackOptions& options = {});

}  // namespace cbf
