#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbf/random_dynamics.hpp"
#include "cbf/singleton.hpp"

namespace cbf {

struct SweepRecord {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::None;
  double r = 1.0;
  double dist_h = 0.0;
  double t_pull = 0.0;
  bool converged = true;
  /// Doubling-test change, present on the records where the test ran.
  std::optional<double> doubling_change;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double delta_theory = 0.0;
  std::vector<double> eps_grid;       ///< descending
  std::vector<double> mean_log_dist;  ///< log of the per-level geometric mean
  std::vector<double> spread_log_dist;
  std::vector<std::size_t> counts;
  std::size_t n_samples = 0;          ///< converged records used
  std::vector<double> residuals;      ///< per level, log mean minus fitted line
  /// Levels (ordered by decreasing epsilon) whose mean distance exceeds the previous one.
  std::size_t inversions = 0;
};

/// ||a - b||_H for singleton attractors.
double measure_distance(const SpectralVelocity& a, const SpectralVelocity& b);
/// ||v - a*||_H with v the transformed state of the sample.
double measure_distance(const SpectralVelocity& a_star, const PullbackSample& sample);

/// (r+1)/(2r) for additive noise, 1 for multiplicative noise.
double predicted_exponent(NoiseMode mode, double r);

/// Least-squares fit of log(geometric mean distance) against log(epsilon).
/// Needs at least 3 levels with at least 2 converged records each, otherwise NonConvergenceError.
RateFit fit_rate(const std::vector<SweepRecord>& records, NoiseMode mode, double r);

struct SweepOptions {
  std::vector<double> eps_grid;
  std::size_t n_samples = 4;
  std::uint64_t seed_offset = 0;
  double t_pull = 20.0;
  double h = 0.01;
  double ou_alpha = 1.0;
  /// Additive noise profile.
  std::optional<SpectralVelocity> phi;
  /// Pullback start; zero when empty.
  std::optional<SpectralVelocity> initial;
  double pullback_tolerance = 1e-4;
  unsigned workers = 1;
  SingletonOptions singleton;
  SolverOptions solver;
};

struct SweepResult {
  SingletonResult singleton;
  std::vector<SweepRecord> records;  ///< ordered by decreasing epsilon, then seed
  std::optional<RateFit> fit;        ///< empty when too few records converged
};

/// Finds a* once, then one pullback sample per (epsilon, seed) with the same seed across
/// epsilon levels. The doubling test runs at the largest epsilon only; a failure there
/// marks every record of that seed as non-converged.
SweepResult rate_sweep(const PhysicsParams& params, NoiseMode mode, const SweepOptions& options);

/// Throws ValidationError unless the mode suits the dimension and r
/// (additive: 2D, 1 <= r <= 2; multiplicative: 2D r >= 1, or 3D 3 <= r <= 5).
void check_mode_regime(NoiseMode mode, int dim, double r);

struct ContractionResult {
  /// Worst (largest) tail slope of log ||u1 - u2||_H^2 over the pairs.
  double slope = 0.0;
  std::vector<double> pair_slopes;
  /// -varrho / 2 from the condition report.
  double theory_floor = 0.0;
  ConditionReport condition;
  std::vector<double> times;
  std::vector<std::vector<double>> log_dist2;  ///< per pair
  bool flagged = false;                        ///< some pair does not decay
};

struct ContractionOptions {
  int pairs = 2;
  double duration = 20.0;
  double h = 0.01;
  std::uint64_t seed = 100;
  /// Explicit initial pairs; when empty, pair p uses probe fields seed + 2p and seed + 2p + 1.
  std::vector<std::pair<SpectralVelocity, SpectralVelocity>> initial_pairs;
  /// Fit only t >= tail_fraction * duration and log d^2 above the roundoff floor.
  double tail_fraction = 0.5;
  EstimateConstants constants;
  SolverOptions solver;
};

ContractionResult contraction_experiment(const PhysicsParams& params, const ContractionOptions& options = {});

/// Ordinary least-squares slope and intercept.
std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cbf
