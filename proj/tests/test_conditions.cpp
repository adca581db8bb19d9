#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "cbf/errors.hpp"
#include "cbf/field_factory.hpp"
#include "cbf/physics.hpp"
#include "cbf/spectral_ops.hpp"

using namespace cbf;
using std::numbers::pi;

namespace {

PhysicsParams params_with_forcing(const TorusGrid& g, double mu, double beta, double r, double f_norm) {
  SpectralVelocity f(g);
  if (f_norm > 0.0)
    f = with_h_norm(leray_project(mode_field(g, {{{1, 0, 0}, {0.0, Complex(0.0, -0.5), 0.0}}})), f_norm);
  return PhysicsParams{mu, beta, r, 0.0, f};
}

}  // namespace

TEST_CASE("Grashof number") {
  const TorusGrid g(2, 16, 2.0 * pi);  // lambda1 = 1
  CHECK(grashof(params_with_forcing(g, 1.0, 1.0, 3.0, 0.0)) == 0.0);
  CHECK(grashof(params_with_forcing(g, 1.0, 1.0, 3.0, 0.1)) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(grashof(params_with_forcing(g, 2.0, 1.0, 3.0, 1.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(reynolds(params_with_forcing(g, 2.0, 1.0, 3.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("2D smallness condition") {
  const TorusGrid g(2, 16, 2.0 * pi);
  const EstimateConstants unit{1.0, 1.0, 1.0};

  SUBCASE("zero forcing holds with varrho = mu lambda1") {
    const auto rep = check_singleton_condition(params_with_forcing(g, 1.3, 1.0, 2.0, 0.0), {}, Regime::TwoD_C1);
    CHECK(rep.holds);
    CHECK(rep.varrho == doctest::Approx(1.3).epsilon(1e-15));
  }

  SUBCASE("mu = lambda1 = c1 = 1, ||f|| = 0.5") {
    const auto rep = check_singleton_condition(params_with_forcing(g, 1.0, 1.0, 3.0, 0.5), unit, Regime::TwoD_C1);
    CHECK(rep.varrho == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(rep.threshold == doctest::Approx(0.5773502691896258).epsilon(1e-14));
    CHECK(rep.grashof == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rep.holds);
    CHECK(rep.grashof_below_threshold);
  }

  SUBCASE("alternative condition C3") {
    const auto rep = check_singleton_condition(params_with_forcing(g, 1.0, 1.0, 3.0, 0.5), unit, Regime::TwoD_C3);
    CHECK(rep.threshold == 1.0);
    CHECK(rep.varrho == doctest::Approx(0.75).epsilon(1e-13));
  }

  SUBCASE("regime mismatches and darcy are rejected") {
    CHECK_THROWS_AS(check_singleton_condition(params_with_forcing(g, 1, 1, 3, 0), {}, Regime::ThreeD_REquals3),
                    ValidationError);
    auto p = params_with_forcing(g, 1, 1, 3, 0);
    p.darcy = 0.1;
    CHECK_THROWS_AS(check_singleton_condition(p, {}, Regime::TwoD_C1), ValidationError);
    CHECK_THROWS_AS(check_singleton_condition(params_with_forcing(g, 1, 1, 3, 0), {0.0, 1.0, 1.0},
                                              Regime::TwoD_C1),
                    ValidationError);
  }
}

TEST_CASE("3D smallness conditions") {
  const TorusGrid g(3, 8, 2.0 * pi);

  SUBCASE("eta3 for r = 5, mu = beta = 1") {
    CHECK(eta3(1.0, 1.0, 5.0) == doctest::Approx(0.5).epsilon(1e-15));
    const auto rep = check_singleton_condition(params_with_forcing(g, 1.0, 1.0, 5.0, 0.0), {}, Regime::ThreeD_RAbove3);
    REQUIRE(rep.eta3.has_value());
    CHECK(*rep.eta3 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rep.holds);
  }

  SUBCASE("r = 3 needs 2 beta mu >= 1") {
    CHECK_THROWS_AS(check_singleton_condition(params_with_forcing(g, 1.0, 0.4, 3.0, 0.0), {}, Regime::ThreeD_REquals3),
                    ValidationError);
    const auto rep = check_singleton_condition(params_with_forcing(g, 1.0, 0.5, 3.0, 0.1), {}, Regime::ThreeD_REquals3);
    CHECK_FALSE(rep.eta3.has_value());
    CHECK(rep.holds == rep.grashof_below_threshold);
  }

  SUBCASE("3D with r < 3 is rejected") {
    CHECK_THROWS_AS(params_with_forcing(g, 1.0, 1.0, 2.0, 0.0).validate(), ValidationError);
  }
}

TEST_CASE("threshold and varrho forms agree on 10^6 random parameter tuples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Regime regimes[] = {Regime::TwoD_C1, Regime::TwoD_C3, Regime::ThreeD_RAbove3, Regime::ThreeD_REquals3};
  std::size_t disagreements = 0, holds = 0;
  for (int i = 0; i < 1000000; ++i) {
    const Regime regime = regimes[i % 4];
    const double mu = std::pow(10.0, logu(rng));
    const double beta = std::pow(10.0, logu(rng));
    const double lambda1 = std::pow(10.0, logu(rng));
    const double r = regime == Regime::ThreeD_REquals3 ? 3.0 : 3.0 + 0.01 + 5.0 * unit(rng);
    const EstimateConstants k{std::pow(10.0, 0.5 * logu(rng)), 1.0, std::pow(10.0, 0.5 * logu(rng))};
    const double probe = evaluate_condition(regime, mu, beta, r, lambda1, 0.0, k).threshold * mu * mu * lambda1;
    const double f = probe * 2.0 * unit(rng);
    const auto rep = evaluate_condition(regime, mu, beta, r, lambda1, f, k);
    disagreements += rep.holds != rep.grashof_below_threshold;
    holds += rep.holds;
  }
  CHECK(disagreements == 0);
  CHECK(holds > 400000);
  CHECK(holds < 600000);
}
