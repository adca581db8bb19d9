// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "cbf/cli.hpp"
#include "cbf/errors.hpp"
#include "cbf/experiments.hpp"
#include "cbf/field_factory.hpp"
#include "cbf/output.hpp"
#include "cbf/spectral_ops.hpp"

using namespace cbf;
using nlohmann::json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

fs::path g_work;
std::vector<fs::path> g_cli_runs;  // output directories replayed by criterion 11

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(4);
  o << x;
  return o.str();
}

// f on the (1, 0) shear mode with ||f||_H = 0.5 * threshold * mu^2 lambda1
const double kHalfC1 = 0.5 * std::sqrt(1.0 / 3.0) / std::sqrt(2.0);

std::string base_2d(double r, double fnorm) {
  return "[grid]\ndim = 2\nN = 32\nL = 2pi\n\n[physics]\nmu = 1\nbeta = 1\nr = " + format_real(r) +
         "\nforcing = 1 0 | 0 0 0 -0.5\nforcing_h_norm = " + format_real(fnorm) + "\n";
}

int cli(const std::string& subcommand, const std::string& name, const std::string& config) {
  const fs::path dir = g_work / name;
  fs::create_directories(dir);
  write_text(dir / "run.cfg", config);
  const std::string cfg = (dir / "run.cfg").string(), out = (dir / "out").string();
  const char* argv[] = {"cbf_lab", subcommand.c_str(), "--config", cfg.c_str(), "--out", out.c_str()};
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int code = cli_main(6, argv);
  std::cout.rdbuf(old);
  g_cli_runs.push_back(dir / "out");
  return code;
}

json read_json(const fs::path& p) { return json::parse(read_text(p)); }

SpectralVelocity dealiased_field(const TorusGrid& g, std::uint64_t seed) {
  return random_field(g, seed, {.spectral_exponent = 1.0, .k_max = g.modes() / 3.0, .h_norm = 1.0});
}

Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusGrid g(2, 32, 2.0 * pi);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  bool idem = true;
  double div = 0.0, skew = 0.0, orth = 0.0, mono = INFINITY;
  for (std::uint64_t s = 0; s < 200; ++s) {
    SpectralVelocity raw(g);
    for (std::size_t i = 1; i < g.lattice_size(); ++i)
      if (g.k_squared(i) * 9 <= g.modes() * g.modes())
        for (int c = 0; c < 2; ++c) raw(c, i) = Complex(n01(rng), n01(rng));
    const auto p = project_solenoidal(raw);
    idem = idem && (leray_project(p) == p);
    div = std::max(div, max_divergence(p) / std::max(1.0, h_norm(p)));

    const auto u = dealiased_field(g, 3 * s + 1), v = dealiased_field(g, 3 * s + 2);
    skew = std::max(skew, std::abs(trilinear_b(u, v, v)) / (h_norm(u) * v_norm(v) * v_norm(v)));
    orth = std::max(orth, std::abs(inner_product(bilinear_B(u, u), stokes_apply(u))) /
                              (v_norm(u) * v_norm(u) * a_norm(u)));
    if (s < 50)
      for (double r : {1.0, 2.0, 3.0, 5.0})
        mono = std::min(mono, inner_product(damping_C(u, r) - damping_C(v, r), u - v));
  }
  const double secs = seconds_since(t0);
  const bool pass = idem && div <= 1e-12 && skew <= 1e-10 && orth <= 1e-8 && mono >= -1e-12 && secs < 30.0;
  return {pass, std::string("idempotent ") + (idem ? "exact" : "NOT exact") + ", div " + fmt(div) + ", |b(u,v,v)| " +
                    fmt(skew) + ", |<B(u,u),Au>| " + fmt(orth) + ", min monotonicity " + fmt(mono) + ", " +
                    fmt(secs) + " s"};
}

Verdict criterion2() {
  double err[2];
  int i = 0;
  for (int n : {64, 128}) {
    const TorusGrid g(2, n, 2.0 * pi);
    const auto u = oracle::smooth_field(g, 0.35);
    const double lhs = inner_product(stokes_apply(u), damping_C(u, 3.0));
    const double rhs = oracle::damping_gradient_identity_rhs(u, 3.0);
    err[i++] = std::abs(lhs - rhs) / std::abs(rhs);
  }
  return {err[0] <= 1e-4 && err[1] < err[0],
          "relative error " + fmt(err[0]) + " at N = 64, " + fmt(err[1]) + " at N = 128"};
}

Verdict criterion3() {
  const TorusGrid g(2, 32, 2.0 * pi);
  const PhysicsParams p{1.0, 1.0, 3.0, 0.0,
                        with_h_norm(leray_project(mode_field(g, {{{1, 0, 0}, {0.0, Complex(0.0, -0.5), 0.0}}})), kHalfC1)};
  const auto u0 = probe_field(g, 3);
  std::vector<double> worst;
  for (double h : {0.02, 0.01, 0.005}) {
    double w = 0.0;
    for (double e : energy_residual(simulate(u0, p, 1.0, h))) w = std::max(w, std::abs(e));
    worst.push_back(w);
  }
  const double f1 = worst[0] / worst[1], f2 = worst[1] / worst[2];
  const bool pass = f1 >= 3.0 && f1 <= 5.3 && f2 >= 3.0 && f2 <= 5.3;
  return {pass, "residual " + fmt(worst[0]) + " / " + fmt(worst[1]) + " / " + fmt(worst[2]) + " at h = 0.02 / 0.01 / "
                "0.005, factors " + fmt(f1) + ", " + fmt(f2)};
}

Verdict criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const int code = cli("singleton", "c4_singleton",
                       base_2d(3.0, kHalfC1) + "\n[solver]\nh = 0.01\ntol = 1e-8\nmax_time = 200\nprobes = 3\n");
  const double secs = seconds_since(t0);
  const json s = read_json(g_work / "c4_singleton" / "out" / "singleton.json");
  const auto t = s["log"]["t"].get<std::vector<double>>();
  const auto d = s["log"]["max_distance"].get<std::vector<double>>();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (d[i] < 1e-3 && d[i] > 1e-9) x.push_back(t[i]), y.push_back(std::log(d[i] * d[i]));
  const double slope = x.size() >= 3 ? least_squares(x, y).first : 0.0;
  const double varrho = s["condition"]["varrho"].get<double>();
  const double residual = s["steady_residual"].get<double>();
  const double final_d = d.empty() ? INFINITY : d.back();
  const bool pass = code == 0 && s["converged"].get<bool>() && final_d < 1e-8 && slope <= -varrho / 2.0 * 0.8 &&
                    residual <= 1e-6 && secs < 300.0;
  return {pass, "converged at t = " + fmt(s["time"].get<double>()) + ", max pairwise " + fmt(final_d) +
                    ", tail slope " + fmt(slope) + " (bound " + fmt(-varrho / 2.0 * 0.8) + "), residual " +
                    fmt(residual) + ", " + fmt(secs) + " s"};
}

Verdict criterion5() {
  const TorusGrid g(2, 32, 2.0 * pi);
  const PhysicsParams p{1.0, 1.0, 3.0, 0.0, SpectralVelocity(g)};
  const double t_pull = 30.0 / (p.mu * g.lambda1());
  double worst = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (NoiseMode mode : {NoiseMode::None, NoiseMode::Multiplicative}) {
      const NoiseConfig n{mode, mode == NoiseMode::None ? 0.0 : 0.5, std::nullopt, 1.0, seed};
      const auto s = pullback_sample(p, n, t_pull, 0.01, {.initial = probe_field(g, 40 + seed), .doubling_check = false});
      worst = std::max({worst, h_norm(s.u), h_norm(s.v)});
    }
  }
  return {worst <= 1e-6, "max ||sample||_H " + fmt(worst) + " at t_pull = " + fmt(t_pull) +
                             " (deterministic and multiplicative, 3 seeds, unit-norm start)"};
}

Verdict criterion6() {
  const int code = cli("ou-diagnostics", "c6_ou",
                       "[noise]\nou_alpha = 1\nseed = 2024\n\n[solver]\nh = 0.01\n\n[output]\nou_horizon = 1000\n"
                       "ou_samples = 100000\nou_paths = 20\nou_window = 5\n");
  const json j = read_json(g_work / "c6_ou" / "out" / "ou.json");
  const auto& m2 = j["moments"]["abs_z2"];
  const auto& m1 = j["moments"]["abs_z"];
  const double z2 = m2["mean"], se2 = m2["se"], z1 = m1["mean"], se1 = m1["se"];
  const double fwd = j["forward_time_average"]["value"], bound = 5.0 / std::sqrt(2.0 * 1000.0);
  const bool pass = code == 0 && j["moments"]["samples"] == 100000 && std::abs(z2 - 0.5) <= 3.0 * se2 &&
                    std::abs(z1 - 1.0 / std::sqrt(pi)) <= 3.0 * se1 && std::abs(fwd) <= bound;
  return {pass, "E|z|^2 " + fmt(z2) + " (" + fmt((z2 - 0.5) / se2) + " SE), E|z| " + fmt(z1) + " (" +
                    fmt((z1 - 1.0 / std::sqrt(pi)) / se1) + " SE), time average " + fmt(fwd) + " vs " + fmt(bound)};
}

Verdict criterion7() {
  const TorusGrid g(2, 32, 2.0 * pi);
  const PhysicsParams p{1.0, 1.0, 3.0, 0.0,
                        with_h_norm(leray_project(mode_field(g, {{{1, 0, 0}, {0.0, Complex(0.0, -0.5), 0.0}}})), kHalfC1)};
  const auto u0 = probe_field(g, 11);
  const double h = 0.01;
  const std::size_t steps = 1000;
  const auto det = simulate(u0, p, steps * h, h, {.snapshot_every = 100});
  const OUPath ou = sample_ou(5, 1.0, 0.0, steps * h, h);
  std::size_t compared = 0, differing = 0;
  for (NoiseMode mode : {NoiseMode::Additive, NoiseMode::Multiplicative}) {
    NoiseConfig n{mode, 0.0, std::nullopt, 1.0, 5};
    if (mode == NoiseMode::Additive)
      n.phi = with_h_norm(leray_project(mode_field(g, {{{1, 1, 0}, {Complex(0.3, 0.1), Complex(-0.3, -0.1), 0.0}}})), 1.0);
    const auto tr = solve_random(u0, p, n, ou, 0.0, steps * h, h, {.snapshot_every = 100});
    if (tr.v.size() != det.snapshots.size()) return {false, "snapshot count mismatch"};
    for (std::size_t i = 0; i < tr.v.size(); ++i) {
      const auto a = tr.u[i].coefficients(), b = det.snapshots[i].coefficients();
      for (std::size_t k = 0; k < a.size(); ++k, ++compared)
        if (a[k] != b[k]) ++differing;
    }
  }
  return {differing == 0, std::to_string(differing) + " of " + std::to_string(compared) +
                              " coefficients differ over 1000 steps (additive and multiplicative)"};
}

std::string sweep_config(NoiseMode mode, double r) {
  std::string c = base_2d(r, kHalfC1) + "\n[noise]\nmode = " + to_string(mode) +
                  "\neps_grid = 0.1 0.05 0.025 0.0125\nou_alpha = 1\nsamples = 4\nseed = 0\n";
  if (mode == NoiseMode::Additive) c += "phi = 1 1 | 0.3 0.1 -0.3 -0.1; 2 -1 | 0.1 0 0.2 0\nphi_h_norm = 1\n";
  return c + "\n[solver]\nh = 0.01\nt_pull = 20\ntol = 1e-10\nmax_time = 100\npullback_tol = 1e-4\n";
}

struct SweepOutcome {
  int code = 0;
  double slope = NAN;
  std::size_t inversions = 0;
  std::size_t samples = 0;
  double secs = 0.0;
  std::string means;
};

SweepOutcome run_sweep(const std::string& name, NoiseMode mode, double r) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepOutcome o;
  o.code = cli("sweep", name, sweep_config(mode, r));
  o.secs = seconds_since(t0);
  const fs::path fit = g_work / name / "out" / "fit.json";
  if (!fs::exists(fit)) return o;
  const json j = read_json(fit);
  o.slope = j["slope"];
  o.inversions = j["inversions"];
  o.samples = j["n_samples"];
  for (double l : j["mean_log_dist"].get<std::vector<double>>()) o.means += (o.means.empty() ? "" : " ") + fmt(std::exp(l));
  return o;
}

Verdict criterion8() {
  const auto o = run_sweep("c8_multiplicative", NoiseMode::Multiplicative, 3.0);
  const bool pass = o.code == 0 && o.samples == 16 && o.slope >= 1.0 - 0.15 && o.inversions <= 1 && o.secs < 1800.0;
  return {pass, "fitted exponent " + fmt(o.slope) + " (need >= 0.85), " + std::to_string(o.inversions) +
                    " inversions, means [" + o.means + "], " + std::to_string(o.samples) + " samples, " + fmt(o.secs) + " s"};
}

Verdict criterion9() {
  const auto a = run_sweep("c9_additive_r1", NoiseMode::Additive, 1.0);
  const auto b = run_sweep("c9_additive_r2", NoiseMode::Additive, 2.0);
  const bool pass = a.code == 0 && b.code == 0 && a.samples == 16 && b.samples == 16 && a.slope >= 0.85 &&
                    b.slope >= 0.60;
  return {pass, "r = 1: exponent " + fmt(a.slope) + " (need >= 0.85); r = 2: exponent " + fmt(b.slope) +
                    " (need >= 0.60, theory 0.75)"};
}

Verdict criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusGrid g(3, 16, 2.0 * pi);
  const EstimateConstants k;
  const double threshold = evaluate_condition(Regime::ThreeD_REquals3, 1.0, 1.0, 3.0, g.lambda1(), 0.0, k).threshold;
  const double fnorm = 0.5 * threshold;  // mu = lambda1 = 1
  const PhysicsParams p{1.0, 1.0, 3.0, 0.0,
                        with_h_norm(leray_project(mode_field(g, {{{1, 0, 0}, {0.0, Complex(0.0, -0.5), 0.0}}})), fnorm)};
  const auto single = find_singleton(p, {.tol = 1e-10, .max_time = 100.0});
  if (!single.converged) return {false, "singleton search did not converge by t = " + fmt(single.time)};
  double dist[2];
  bool converged = true;
  int i = 0;
  for (double eps : {0.1, 0.025}) {
    const NoiseConfig n{NoiseMode::Multiplicative, eps, std::nullopt, 1.0, 0};
    const auto s = pullback_sample(p, n, 20.0, 0.01, {.doubling_check = eps == 0.1});
    converged = converged && s.converged;
    dist[i++] = measure_distance(single.a_star, s);
  }
  const double ratio = dist[0] / dist[1];
  const double secs = seconds_since(t0);
  const bool pass = converged && ratio >= 4.0 && secs < 1800.0;
  return {pass, "G/threshold 0.5 (threshold " + fmt(threshold) + "), singleton at t = " + fmt(single.time) +
                    ", dist " + fmt(dist[0]) + " at eps 0.1, " + fmt(dist[1]) + " at eps 0.025, ratio " + fmt(ratio) +
                    " (need >= 4), " + fmt(secs) + " s"};
}

Verdict criterion11() {
  std::size_t files = 0, identical = 0;
  std::string failures;
  for (const auto& out : g_cli_runs) {
    const fs::path replay = out.parent_path() / "replay";
    const std::string manifest = (out / "manifest.json").string(), rdir = replay.string();
    const char* argv[] = {"cbf_lab", "--manifest", manifest.c_str(), "--out", rdir.c_str()};
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    cli_main(5, argv);
    std::cout.rdbuf(old);
    for (const auto& entry : fs::directory_iterator(out)) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      const fs::path twin = replay / entry.path().filename();
      if (fs::exists(twin) && read_text(twin) == read_text(entry.path()))
        ++identical;
      else
        failures += " " + out.parent_path().filename().string() + "/" + entry.path().filename().string();
    }
  }
  return {files > 0 && identical == files, std::to_string(identical) + " of " + std::to_string(files) +
                                               " CSV outputs byte-identical after manifest replay" + failures};
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cbf_acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"operator identities", criterion1},
      {"damping gradient identity", criterion2},
      {"energy equality refinement", criterion3},
      {"2D singleton attractor", criterion4},
      {"unforced pullback collapse", criterion5},
      {"OU statistics", criterion6},
      {"epsilon = 0 reduction", criterion7},
      {"multiplicative rate", criterion8},
      {"additive rate", criterion9},
      {"3D multiplicative smoke test", criterion10},
      {"manifest reproducibility", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << v.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
