#pragma once

#include <optional>
#include <string>

#include "cbf/spectral_field.hpp"

namespace cbf {

/// Coefficients of du/dt + mu A u + B(u) + darcy u + beta C(u) = f.
struct PhysicsParams {
  double mu = 1.0;
  double beta = 1.0;
  double r = 3.0;
  double darcy = 0.0;
  SpectralVelocity forcing;

  const TorusGrid& grid() const { return forcing.grid(); }
  /// Throws ValidationError on a regime violation (3D needs r >= 3, and 2 beta mu >= 1 at r = 3).
  void validate() const;
};

/// Constants of the trilinear estimates. The defaults are placeholders; every report
/// that depends on them says so.
struct EstimateConstants {
  double c1 = 1.4142135623730951;
  double c2 = 1.4142135623730951;
  double c3 = 2.0;
  bool provisional = true;

  void validate() const;
  bool operator==(const EstimateConstants&) const = default;
};

enum class Regime { TwoD_C1, TwoD_C3, ThreeD_RAbove3, ThreeD_REquals3 };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& text);
/// (C_1) in 2D; r > 3 or r = 3 variant in 3D.
Regime default_regime(const PhysicsParams& params);

struct ConditionReport {
  Regime regime = Regime::TwoD_C1;
  double grashof = 0.0;
  double reynolds = 0.0;
  double threshold = 0.0;
  /// Smallness margin (varrho, varrho_*, varrho_1 or varrho_2 depending on the regime).
  double varrho = 0.0;
  std::optional<double> eta3;
  EstimateConstants constants;
  bool holds = false;                   ///< varrho > 0
  bool grashof_below_threshold = false; ///< the equivalent G < threshold form
};

/// G = ||f||_H / (mu^2 lambda1).
double grashof(const PhysicsParams& params);
/// Re = ||f||_H^{1/2} / (mu lambda1^{1/2}).
double reynolds(const PhysicsParams& params);
/// eta3 = [(r-3)/(mu(r-1))] [4/(beta mu (r-1))]^{2/(r-3)}, r > 3.
double eta3(double mu, double beta, double r);

/// Grashof-number smallness check for the given regime. Requires darcy = 0.
ConditionReport check_singleton_condition(const PhysicsParams& params, const EstimateConstants& constants,
                                          Regime regime);

/// The same check from raw scalars (used for parameter scans).
ConditionReport evaluate_condition(Regime regime, double mu, double beta, double r, double lambda1,
                                   double forcing_h_norm, const EstimateConstants& constants);

std::string format_report(const ConditionReport& report);

}  // namespace cbf
