#include "cbf/experiments.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "cbf/errors.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

double measure_distance(const SpectralVelocity& a, const SpectralVelocity& b) {
  require_same_grid(a.grid(), b.grid(), "measure_distance");
  return h_norm(a - b);
}

double measure_distance(const SpectralVelocity& a_star, const PullbackSample& sample) {
  return measure_distance(a_star, sample.v);
}

double predicted_exponent(NoiseMode mode, double r) {
  switch (mode) {
    case NoiseMode::Additive: return (r + 1.0) / (2.0 * r);
    case NoiseMode::Multiplicative: return 1.0;
    case NoiseMode::None: break;
  }
  throw ValidationError("predicted_exponent: no rate for noise mode none");
}

std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("least_squares: need two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("least_squares: abscissae coincide");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

RateFit fit_rate(const std::vector<SweepRecord>& records, NoiseMode mode, double r) {
  std::map<double, std::vector<double>, std::greater<>> levels;
  for (const auto& rec : records) {
    if (!rec.converged) continue;
    if (!(rec.epsilon > 0.0) || !(rec.dist_h > 0.0) || !std::isfinite(rec.dist_h)) continue;
    levels[rec.epsilon].push_back(std::log(rec.dist_h));
  }
  std::erase_if(levels, [](const auto& kv) { return kv.second.size() < 2; });
  if (levels.size() < 3)
    throw NonConvergenceError("fit_rate: need at least 3 epsilon levels with 2 or more converged samples, have " +
                              std::to_string(levels.size()));
  RateFit fit;
  fit.delta_theory = predicted_exponent(mode, r);
  std::vector<double> x;
  for (const auto& [eps, logs] : levels) {
    double m = 0.0;
    for (double v : logs) m += v;
    m /= static_cast<double>(logs.size());
    double s = 0.0;
    for (double v : logs) s += (v - m) * (v - m);
    fit.eps_grid.push_back(eps);
    fit.mean_log_dist.push_back(m);
    fit.spread_log_dist.push_back(std::sqrt(s / static_cast<double>(logs.size() - 1)));
    fit.counts.push_back(logs.size());
    fit.n_samples += logs.size();
    x.push_back(std::log(eps));
  }
  std::tie(fit.slope, fit.intercept) = least_squares(x, fit.mean_log_dist);
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residuals.push_back(fit.mean_log_dist[i] - (fit.intercept + fit.slope * x[i]));
    if (i > 0 && fit.mean_log_dist[i] > fit.mean_log_dist[i - 1]) ++fit.inversions;
  }
  return fit;
}

void check_mode_regime(NoiseMode mode, int dim, double r) {
  switch (mode) {
    case NoiseMode::Additive:
      if (dim != 2) throw ValidationError("additive noise is only supported in 2D");
      if (r < 1.0 || r > 2.0) throw ValidationError("additive rate theory needs 1 <= r <= 2");
      return;
    case NoiseMode::Multiplicative:
      if (dim == 2 && r >= 1.0) return;
      if (dim == 3 && r >= 3.0 && r <= 5.0) return;
      throw ValidationError("multiplicative rate theory needs r >= 1 in 2D or 3 <= r <= 5 in 3D");
    case NoiseMode::None: break;
  }
  throw ValidationError("rate sweep needs additive or multiplicative noise");
}

SweepResult rate_sweep(const PhysicsParams& params, NoiseMode mode, const SweepOptions& opt) {
  params.validate();
  check_mode_regime(mode, params.grid().dim(), params.r);
  if (opt.eps_grid.empty() || opt.n_samples == 0) throw ValidationError("rate_sweep: empty epsilon grid or sample set");
  for (double e : opt.eps_grid)
    if (!(e > 0.0 && e <= 1.0)) throw ValidationError("rate_sweep: epsilon levels must lie in (0, 1]");
  std::vector<double> eps = opt.eps_grid;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (std::adjacent_find(eps.begin(), eps.end()) != eps.end())
    throw ValidationError("rate_sweep: repeated epsilon level");

  SweepResult result{find_singleton(params, opt.singleton)};
  if (!result.singleton.converged)
    throw NonConvergenceError("rate_sweep: singleton search did not converge by t = " +
                              std::to_string(result.singleton.time));
  const SpectralVelocity& a_star = result.singleton.a_star;

  const std::size_t n_jobs = eps.size() * opt.n_samples;
  result.records.resize(n_jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto job = [&](std::size_t idx) {
    const std::size_t level = idx / opt.n_samples;
    const std::uint64_t seed = opt.seed_offset + idx % opt.n_samples;
    NoiseConfig noise{mode, eps[level], opt.phi, opt.ou_alpha, seed};
    PullbackOptions po{opt.initial, level == 0, opt.pullback_tolerance, opt.solver};
    const PullbackSample s = pullback_sample(params, noise, opt.t_pull, opt.h, po);
    SweepRecord& rec = result.records[idx];
    rec = {eps[level], seed, mode, params.r, measure_distance(a_star, s), opt.t_pull, s.converged, s.doubling_change};
    spdlog::debug("rate_sweep: eps {} seed {} dist {}", rec.epsilon, rec.seed, rec.dist_h);
  };
  auto worker = [&] {
    for (std::size_t i = next++; i < n_jobs; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_jobs;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(n_jobs)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // the doubling verdict at the largest epsilon applies to every level of that seed
  for (std::size_t s = 0; s < opt.n_samples; ++s)
    if (!result.records[s].converged)
      for (std::size_t level = 1; level < eps.size(); ++level) result.records[level * opt.n_samples + s].converged = false;

  try {
    result.fit = fit_rate(result.records, mode, params.r);
  } catch (const NonConvergenceError& e) {
    spdlog::warn("rate_sweep: {}", e.what());
  }
  return result;
}

ContractionResult contraction_experiment(const PhysicsParams& params, const ContractionOptions& opt) {
  params.validate();
  const int pairs = opt.initial_pairs.empty() ? opt.pairs : static_cast<int>(opt.initial_pairs.size());
  if (pairs < 1) throw ValidationError("contraction_experiment: need at least one pair");
  ContractionResult res;
  res.condition = check_singleton_condition(params, opt.constants, default_regime(params));
  if (!res.condition.holds)
    throw ValidationError("contraction_experiment: smallness condition " + to_string(res.condition.regime) +
                          " does not hold");
  res.theory_floor = -res.condition.varrho / 2.0;

  const ExponentialRk2 stepper(params.grid(), params.mu, opt.h);
  const DriftFunction drift = [&](const SpectralVelocity& v) { return evaluate_drift(v, params); };
  SolverOptions solver = opt.solver;
  solver.record_lr = false;
  const auto steps = static_cast<std::size_t>(std::llround(opt.duration / opt.h));
  for (std::size_t n = 0; n <= steps; ++n) res.times.push_back(static_cast<double>(n) * opt.h);

  res.slope = -INFINITY;
  for (int p = 0; p < pairs; ++p) {
    const auto seed = opt.seed + 2 * static_cast<std::uint64_t>(p);
    SpectralVelocity a = opt.initial_pairs.empty() ? probe_field(params.grid(), seed) : opt.initial_pairs[p].first;
    SpectralVelocity b = opt.initial_pairs.empty() ? probe_field(params.grid(), seed + 1) : opt.initial_pairs[p].second;
    std::vector<double> log_d2;
    const double d0 = h_norm(a - b);
    log_d2.push_back(d0 > 0.0 ? std::log(d0 * d0) : -INFINITY);
    for (std::size_t n = 0; n < steps; ++n) {
      a = guarded_step(stepper, a, drift, solver).state;
      b = guarded_step(stepper, b, drift, solver).state;
      const double d = h_norm(a - b);
      log_d2.push_back(d > 0.0 ? std::log(d * d) : -INFINITY);
    }
    // roundoff floor: stop fitting once the distance is within 1e-12 of the field size
    const double floor = 2.0 * std::log(1e-12 * std::max(1.0, h_norm(a)));
    std::vector<double> x, y;
    for (std::size_t n = 0; n <= steps; ++n)
      if (res.times[n] >= opt.tail_fraction * opt.duration && log_d2[n] > floor) {
        x.push_back(res.times[n]);
        y.push_back(log_d2[n]);
      }
    double slope = 0.0;
    if (x.size() >= 3) {
      slope = least_squares(x, y).first;
    } else {
      // collapsed to roundoff before the tail window: fit the whole decay instead
      x.clear(), y.clear();
      for (std::size_t n = 0; n <= steps; ++n)
        if (log_d2[n] > floor) x.push_back(res.times[n]), y.push_back(log_d2[n]);
      slope = x.size() >= 3 ? least_squares(x, y).first : -INFINITY;
    }
    if (!(slope < 0.0)) res.flagged = true;
    res.pair_slopes.push_back(slope);
    res.slope = std::max(res.slope, slope);
    res.log_dist2.push_back(std::move(log_d2));
  }
  if (res.flagged) spdlog::warn("contraction_experiment: a pair does not contract (slope {})", res.slope);
  return res;
}

}  // namespace cbf
