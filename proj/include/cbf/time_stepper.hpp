#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cbf/spectral_field.hpp"

namespace cbf {

/// Value of the explicit part N(u) of du/dt = -mu A u + N(u), plus by-products of its
/// collocation pass.
struct RhsEvaluation {
  SpectralVelocity value;
  double max_speed = 0.0;
  std::optional<double> lr_power;
};

using DriftFunction = std::function<RhsEvaluation(const SpectralVelocity&)>;

struct StepOutcome {
  SpectralVelocity state;
  double max_speed = 0.0;             ///< max over both stages
  std::optional<double> lr_power;     ///< of the input state, when the drift reported it
};

/// Two-stage exponential Runge-Kutta scheme (ETD2RK, order 2) with the Stokes part
/// integrated exactly mode by mode:
///
///   a       = e^{-L h} u_n + h phi1(-L h) N(u_n)
///   u_{n+1} = a + h phi2(-L h) (N(a) - N(u_n)),       L = mu lambda1 |k|^2.
///
/// Steady states of the continuous equation are fixed points of the map.
class ExponentialRk2 {
 public:
  ExponentialRk2(const TorusGrid& grid, double mu, double h);

  double step_size() const noexcept { return h_; }
  StepOutcome step(const SpectralVelocity& u, const DriftFunction& drift) const;

 private:
  TorusGrid grid_;
  double h_;
  std::vector<double> decay_;  // e^{-L h}
  std::vector<double> phi1_;   // h phi1(-L h)
  std::vector<double> phi2_;   // h phi2(-L h)
};

/// phi1(z) = (e^z - 1) / z and phi2(z) = (e^z - 1 - z) / z^2, accurate near z = 0.
double phi1(double z);
double phi2(double z);

}  // namespace cbf
