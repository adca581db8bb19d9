#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbf/experiments.hpp"
#include "cbf/field_factory.hpp"

namespace cbf {

/// A field given either as a list of mode terms or as a binary field file, optionally
/// rescaled to a target H-norm. Mode amplitudes are Leray-projected.
struct FieldSpec {
  std::vector<ModeAmplitude> modes;
  std::string file;
  std::optional<double> h_norm;

  bool empty() const { return modes.empty() && file.empty(); }
  bool operator==(const FieldSpec&) const = default;
};

struct GridSection {
  int dim = 2;
  int modes = 32;
  double period = 6.283185307179586;
  double dealias_factor = 1.5;
  bool operator==(const GridSection&) const = default;
};

struct PhysicsSection {
  double mu = 1.0;
  double beta = 1.0;
  double r = 3.0;
  double darcy = 0.0;
  FieldSpec forcing;
  bool operator==(const PhysicsSection&) const = default;
};

struct NoiseSection {
  NoiseMode mode = NoiseMode::None;
  double epsilon = 0.0;
  std::vector<double> eps_grid;
  double ou_alpha = 1.0;
  FieldSpec phi;
  std::uint64_t seed = 0;
  std::size_t samples = 4;
  bool operator==(const NoiseSection&) const = default;
};

/// Start state of simulate and pullback runs.
struct InitialSpec {
  enum class Kind { Zero, Probe, Field } kind = Kind::Zero;
  std::uint64_t seed = 0;  ///< probe seed
  FieldSpec field;
  bool operator==(const InitialSpec&) const = default;
};

struct SolverSection {
  double h = 0.01;
  double duration = 1.0;  ///< key T
  double t_pull = 20.0;
  double tol = 1e-8;
  double max_time = 200.0;
  int probes = 3;
  std::uint64_t probe_seed = 1;
  double cfl_safety = 0.4;
  double blowup_guard = 1e8;
  double pullback_tol = 1e-4;
  bool doubling_check = true;
  InitialSpec initial;
  std::optional<Regime> regime;
  bool allow_condition_override = false;
  int contraction_pairs = 2;
  bool operator==(const SolverSection&) const = default;
};

struct OutputSection {
  std::size_t snapshot_every = 0;
  std::vector<std::string> formats{"csv", "json"};
  // ou-diagnostics
  double ou_horizon = 1000.0;
  std::size_t ou_samples = 100000;
  std::size_t ou_paths = 100;
  double ou_window = 5.0;
  bool dump_path = false;
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  GridSection grid;
  PhysicsSection physics;
  NoiseSection noise;
  SolverSection solver;
  EstimateConstants constants;
  OutputSection output;
  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates the sectioned key = value format. Every syntax error (with its
/// line number) and every semantic violation (with its field path) is collected and
/// thrown together as ConfigError.
RunConfig parse_config(const std::string& text);

/// Text that parse_config maps back to an identical RunConfig.
std::string serialize_config(const RunConfig& config);

/// "k1 k2 [k3] | re im re im [re im]; ..." as used by the forcing and phi keys.
std::vector<ModeAmplitude> parse_mode_list(const std::string& text, int dim);
std::string format_mode_list(const std::vector<ModeAmplitude>& modes, int dim);

TorusGrid make_grid(const RunConfig& config);
/// File paths in field specs are resolved against base_dir when relative.
SpectralVelocity make_field(const FieldSpec& spec, const TorusGrid& grid, const std::string& base_dir = "");
PhysicsParams make_physics(const RunConfig& config, const std::string& base_dir = "");
NoiseConfig make_noise(const RunConfig& config, const TorusGrid& grid, const std::string& base_dir = "");
SolverOptions make_solver_options(const RunConfig& config);
SingletonOptions make_singleton_options(const RunConfig& config);
SpectralVelocity make_initial(const RunConfig& config, const TorusGrid& grid, const std::string& base_dir = "");

}  // namespace cbf
