#include "cbf/physics.hpp"

#include <cmath>
#include <sstream>

#include "cbf/errors.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

void PhysicsParams::validate() const {
  if (!(mu > 0.0)) throw ValidationError("physics.mu: must be > 0");
  if (!(beta >= 0.0)) throw ValidationError("physics.beta: must be >= 0");
  if (!(r >= 1.0)) throw ValidationError("physics.r: must be >= 1");
  if (!(darcy >= 0.0)) throw ValidationError("physics.darcy: must be >= 0");
  for (int c = 0; c < forcing.components(); ++c)
    if (forcing(c, 0) != Complex{}) throw ValidationError("physics.forcing: must be mean-zero");
  if (max_divergence(forcing) > 1e-10) throw ValidationError("physics.forcing: must be divergence-free");
  if (grid().dim() == 3) {
    if (r < 3.0) throw ValidationError("physics.r: 3D requires r >= 3");
    if (r == 3.0 && 2.0 * beta * mu < 1.0)
      throw ValidationError("physics.beta: 3D with r = 3 requires 2 beta mu >= 1");
  }
}

void EstimateConstants::validate() const {
  if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0)) throw ValidationError("constants: c1, c2, c3 must be > 0");
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::TwoD_C1: return "2D-C1";
    case Regime::TwoD_C3: return "2D-C3";
    case Regime::ThreeD_RAbove3: return "3D-r>3";
    case Regime::ThreeD_REquals3: return "3D-r=3";
  }
  return "?";
}

Regime regime_from_string(const std::string& text) {
  for (Regime r : {Regime::TwoD_C1, Regime::TwoD_C3, Regime::ThreeD_RAbove3, Regime::ThreeD_REquals3})
    if (to_string(r) == text) return r;
  throw ValidationError("unknown regime '" + text + "' (expected 2D-C1, 2D-C3, 3D-r>3, 3D-r=3)");
}

Regime default_regime(const PhysicsParams& params) {
  if (params.grid().dim() == 2) return Regime::TwoD_C1;
  return params.r > 3.0 ? Regime::ThreeD_RAbove3 : Regime::ThreeD_REquals3;
}

double grashof(const PhysicsParams& params) {
  return h_norm(params.forcing) / (params.mu * params.mu * params.grid().lambda1());
}

double reynolds(const PhysicsParams& params) {
  return std::sqrt(h_norm(params.forcing)) / (params.mu * std::sqrt(params.grid().lambda1()));
}

double eta3(double mu, double beta, double r) {
  if (!(r > 3.0)) throw ValidationError("eta3: defined for r > 3 only");
  return (r - 3.0) / (mu * (r - 1.0)) * std::pow(4.0 / (beta * mu * (r - 1.0)), 2.0 / (r - 3.0));
}

ConditionReport evaluate_condition(Regime regime, double mu, double beta, double r, double lambda1,
                                   double f, const EstimateConstants& k) {
  ConditionReport rep;
  rep.regime = regime;
  rep.constants = k;
  rep.grashof = f / (mu * mu * lambda1);
  rep.reynolds = std::sqrt(f) / (mu * std::sqrt(lambda1));
  const double ml = mu * lambda1;
  const double f2 = f * f;
  switch (regime) {
    case Regime::TwoD_C1: {
      rep.threshold = std::sqrt(ml / (1.0 + ml + ml * ml)) / k.c1;
      rep.varrho = ml - (k.c1 * k.c1 / (mu * mu)) * (1.0 + 1.0 / ml + 1.0 / (ml * ml)) * f2;
      break;
    }
    case Regime::TwoD_C3: {
      rep.threshold = 1.0 / k.c1;
      rep.varrho = ml - k.c1 * k.c1 * f2 / (mu * mu * mu * lambda1);
      break;
    }
    case Regime::ThreeD_RAbove3: {
      const double e = eta3(mu, beta, r);
      rep.eta3 = e;
      const double a = 2.0 * e + 1.0;
      rep.threshold =
          std::sqrt(4.0 * mu * std::sqrt(lambda1) / (3.0 * std::sqrt(3.0) * (a + a * ml + 2.0 * ml * ml))) / k.c3;
      // eta3 grows without bound as r -> 3+, so keep ||f||^2 inside the bracket.
      const double scaled = 2.0 * f2 + a * (f2 / ml) + a * (f2 / (ml * ml));
      const double c34 = std::pow(k.c3, 4);
      rep.varrho = ml - 27.0 * c34 / (16.0 * std::pow(mu, 5)) * (scaled * scaled);
      break;
    }
    case Regime::ThreeD_REquals3: {
      rep.threshold =
          std::sqrt(4.0 * mu * std::sqrt(lambda1) / (3.0 * std::sqrt(3.0) * (1.0 + ml + ml * ml))) / k.c3;
      const double bracket = 1.0 + 1.0 / ml + 1.0 / (ml * ml);
      const double c34 = std::pow(k.c3, 4);
      const double scaled = bracket * f2;
      rep.varrho = ml - 27.0 * c34 / (16.0 * std::pow(mu, 5)) * (scaled * scaled);
      break;
    }
  }
  rep.holds = rep.varrho > 0.0;
  rep.grashof_below_threshold = rep.grashof < rep.threshold;
  return rep;
}

ConditionReport check_singleton_condition(const PhysicsParams& params, const EstimateConstants& constants,
                                          Regime regime) {
  params.validate();
  constants.validate();
  const int dim = params.grid().dim();
  const bool two_d = regime == Regime::TwoD_C1 || regime == Regime::TwoD_C3;
  if (two_d != (dim == 2)) throw ValidationError("conditions: regime " + to_string(regime) + " does not match dim");
  if (regime == Regime::ThreeD_RAbove3 && !(params.r > 3.0))
    throw ValidationError("conditions: regime 3D-r>3 requires r > 3");
  if (regime == Regime::ThreeD_REquals3 && params.r != 3.0)
    throw ValidationError("conditions: regime 3D-r=3 requires r = 3");
  if (params.darcy != 0.0) throw ValidationError("conditions: the smallness conditions assume darcy = 0");
  return evaluate_condition(regime, params.mu, params.beta, params.r, params.grid().lambda1(),
                            h_norm(params.forcing), constants);
}

std::string format_report(const ConditionReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "regime: " << to_string(rep.regime) << "\n"
     << "grashof: " << rep.grashof << "\n"
     << "reynolds: " << rep.reynolds << "\n"
     << "threshold: " << rep.threshold << "\n"
     << "holds: " << (rep.holds ? "true" : "false") << ", varrho = " << rep.varrho << "\n";
  if (rep.eta3) os << "eta3: " << *rep.eta3 << "\n";
  os << "constants: c1 = " << rep.constants.c1 << ", c2 = " << rep.constants.c2 << ", c3 = " << rep.constants.c3
     << (rep.constants.provisional ? " (provisional placeholders)" : "") << "\n";
  return os.str();
}

}  // namespace cbf
