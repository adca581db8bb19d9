#include "cbf/cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cbf/errors.hpp"
#include "cbf/experiments.hpp"
#include "cbf/field_io.hpp"
#include "cbf/output.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"check-conditions", "simulate", "singleton", "pullback",
                                              "sweep",            "ou-diagnostics", "report"};
  return names;
}

namespace {

json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json condition_json(const ConditionReport& c) {
  json j{{"regime", to_string(c.regime)},
         {"grashof", c.grashof},
         {"reynolds", c.reynolds},
         {"threshold", c.threshold},
         {"varrho", real_or_null(c.varrho)},
         {"holds", c.holds},
         {"grashof_below_threshold", c.grashof_below_threshold},
         {"constants", {{"c1", c.constants.c1}, {"c2", c.constants.c2}, {"c3", c.constants.c3}}},
         {"provisional_constants", c.constants.provisional}};
  if (c.eta3) j["eta3"] = real_or_null(*c.eta3);
  return j;
}

json norms_json(const SpectralVelocity& u, double r) {
  const FieldNorms n = norms(u, r);
  return {{"h_norm", n.h_norm}, {"v_norm", n.v_norm}, {"a_norm", n.a_norm}, {"lr_norm", n.lr_norm}};
}

class Session {
 public:
  explicit Session(const RunRequest& req) : req_(req), out_(req.out_dir) {
    fs::create_directories(out_);
    const auto& f = req.config.output.formats;
    csv_ = std::find(f.begin(), f.end(), "csv") != f.end();
    json_ = std::find(f.begin(), f.end(), "json") != f.end();
    svg_ = std::find(f.begin(), f.end(), "svg") != f.end();
  }

  bool csv() const { return csv_; }
  bool json_enabled() const { return json_; }
  bool svg() const { return svg_; }

  void text(const std::string& name, const std::string& content) {
    write_text(out_ / name, content);
    artifacts_.push_back(name);
  }
  void field(const std::string& name, const SpectralVelocity& u) {
    save_field(out_ / name, u);
    artifacts_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) {
    if (json_) text(name, dump_json(j));
  }
  void csv_file(const std::string& name, const CsvTable& t) {
    if (csv_) text(name, t.str());
  }

  json& seeds() { return seeds_; }

  void manifest(int exit_code) {
    json arts = json::array();
    for (const auto& a : artifacts_) arts.push_back({{"path", a}, {"sha256", sha256_file(out_ / a)}});
    const auto& k = req_.config.constants;
    json m{{"tool", "cbf_lab"},
           {"subcommand", req_.subcommand},
           {"config", serialize_config(req_.config)},
           {"base_dir", req_.base_dir},
           {"seed_offset", req_.seed_offset},
           {"workers", req_.workers},
           {"seeds", seeds_},
           {"constants", {{"c1", k.c1}, {"c2", k.c2}, {"c3", k.c3}, {"provisional", k.provisional}}},
           {"artifacts", arts},
           {"exit_code", exit_code}};
    write_text(out_ / "manifest.json", dump_json(m));
  }

 private:
  const RunRequest& req_;
  fs::path out_;
  bool csv_ = true, json_ = true, svg_ = false;
  std::vector<std::string> artifacts_;
  json seeds_ = json::object();
};

std::string row_real(double x) { return format_real(x); }

int cmd_check_conditions(const RunRequest& req, Session& s) {
  const PhysicsParams p = make_physics(req.config, req.base_dir);
  const Regime regime = req.config.solver.regime.value_or(default_regime(p));
  const ConditionReport rep = check_singleton_condition(p, req.config.constants, regime);
  std::cout << format_report(rep) << std::endl;
  s.json_file("conditions.json", condition_json(rep));
  s.csv_file("conditions.csv", {{"quantity", "value"},
                                {{"regime", to_string(rep.regime)},
                                 {"grashof", row_real(rep.grashof)},
                                 {"threshold", row_real(rep.threshold)},
                                 {"varrho", row_real(rep.varrho)},
                                 {"holds", rep.holds ? "true" : "false"}}});
  return kExitOk;
}

int cmd_simulate(const RunRequest& req, Session& s) {
  const auto& c = req.config;
  const PhysicsParams p = make_physics(c, req.base_dir);
  const TorusGrid& grid = p.grid();
  const SpectralVelocity u0 = make_initial(c, grid, req.base_dir);
  SolverOptions so = make_solver_options(c);
  json summary{{"T", c.solver.duration}, {"h", c.solver.h}, {"noise_mode", to_string(c.noise.mode)}};

  if (c.noise.mode == NoiseMode::None) {
    const Trajectory tr = simulate(u0, p, c.solver.duration, c.solver.h, so);
    const auto res = energy_residual(tr);
    CsvTable t{{"t", "h_norm", "v_norm", "lr_power", "forcing_work", "energy_residual"}, {}};
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      t.rows.push_back({row_real(tr.times[i]), row_real(tr.h_norm[i]), row_real(tr.v_norm[i]),
                        row_real(tr.lr_power[i]), row_real(tr.forcing_work[i]), row_real(res[i])});
    s.csv_file("trajectory.csv", t);
    double worst = 0.0;
    for (double e : res) worst = std::max(worst, std::abs(e));
    summary["max_energy_residual"] = worst;
    summary["final"] = norms_json(tr.final_state(), p.r);
    s.field("final_state.cbf", tr.final_state());
    for (std::size_t i = 1; i + 1 < tr.snapshots.size(); ++i)
      s.field("snapshot_" + std::to_string(i) + ".cbf", tr.snapshots[i]);
  } else {
    const NoiseConfig noise = [&] {
      NoiseConfig n = make_noise(c, grid, req.base_dir);
      n.seed += req.seed_offset;
      return n;
    }();
    s.seeds()["noise"] = noise.seed;
    so.snapshot_every = std::max<std::size_t>(1, so.snapshot_every);
    const OUPath ou = sample_ou(noise.seed, noise.ou_alpha, 0.0, c.solver.duration, c.solver.h);
    SpectralVelocity v0 = u0;
    if (noise.mode == NoiseMode::Additive) v0 = additive_reconstruct(u0, noise, -ou.at(0.0));
    if (noise.mode == NoiseMode::Multiplicative) v0 = multiplicative_reconstruct(u0, noise, -ou.at(0.0));
    const RandomTrajectory tr = solve_random(v0, p, noise, ou, 0.0, c.solver.duration, c.solver.h, so);
    CsvTable t{{"t", "z", "h_norm_v", "h_norm_u"}, {}};
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      t.rows.push_back({row_real(tr.times[i]), row_real(tr.z[i]), row_real(h_norm(tr.v[i])), row_real(h_norm(tr.u[i]))});
    s.csv_file("trajectory.csv", t);
    summary["epsilon"] = noise.epsilon;
    summary["seed"] = noise.seed;
    summary["final_v"] = norms_json(tr.final_v(), p.r);
    summary["final_u"] = norms_json(tr.final_u(), p.r);
    s.field("final_v.cbf", tr.final_v());
    s.field("final_u.cbf", tr.final_u());
  }
  s.json_file("simulate.json", summary);
  return kExitOk;
}

int cmd_singleton(const RunRequest& req, Session& s) {
  const PhysicsParams p = make_physics(req.config, req.base_dir);
  SingletonOptions so = make_singleton_options(req.config);
  so.seed += req.seed_offset;
  s.seeds()["probes"] = so.seed;
  const SingletonResult r = find_singleton(p, so);
  CsvTable t{{"t", "max_distance", "drift"}, {}};
  for (std::size_t i = 0; i < r.log_times.size(); ++i)
    t.rows.push_back({row_real(r.log_times[i]), row_real(r.log_max_distance[i]), row_real(r.log_drift[i])});
  // the distance log is always written, whatever the requested formats
  s.text("singleton_log.csv", t.str());
  const double residual = steady_residual(r.a_star, p);
  s.json_file("singleton.json", {{"converged", r.converged},
                                 {"time", r.time},
                                 {"drift", r.drift},
                                 {"steady_residual", residual},
                                 {"probe_seeds", r.probe_seeds},
                                 {"tol", so.tol},
                                 {"condition", condition_json(r.condition)},
                                 {"a_star", norms_json(r.a_star, p.r)},
                                 {"log", {{"t", r.log_times}, {"max_distance", r.log_max_distance}}}});
  s.field("a_star.cbf", r.a_star);
  std::cout << (r.converged ? "converged" : "not converged") << " at t = " << format_real(r.time)
            << ", steady residual " << format_real(residual) << std::endl;
  return r.converged ? kExitOk : kExitNonConvergence;
}

int cmd_pullback(const RunRequest& req, Session& s) {
  const auto& c = req.config;
  const PhysicsParams p = make_physics(c, req.base_dir);
  NoiseConfig noise = make_noise(c, p.grid(), req.base_dir);
  noise.seed += req.seed_offset;
  s.seeds()["noise"] = noise.seed;
  PullbackOptions po;
  po.initial = make_initial(c, p.grid(), req.base_dir);
  po.doubling_check = c.solver.doubling_check;
  po.tolerance = c.solver.pullback_tol;
  po.solver = make_solver_options(c);
  const PullbackSample smp = pullback_sample(p, noise, c.solver.t_pull, c.solver.h, po);
  json side{{"epsilon", smp.epsilon},
            {"seed", smp.seed},
            {"t_pull", smp.t_pull},
            {"mode", to_string(smp.mode)},
            {"h", smp.h},
            {"z0", smp.z0},
            {"converged", smp.converged},
            {"norms_v", norms_json(smp.v, p.r)},
            {"norms_u", norms_json(smp.u, p.r)}};
  if (smp.doubling_change) side["doubling_change"] = *smp.doubling_change;
  s.field("sample_v.cbf", smp.v);
  s.field("sample_u.cbf", smp.u);
  s.text("pullback.json", dump_json(side));
  s.csv_file("pullback.csv", {{"epsilon", "seed", "mode", "t_pull", "h_norm_v", "h_norm_u", "doubling_change", "converged"},
                              {{row_real(smp.epsilon), std::to_string(smp.seed), to_string(smp.mode),
                                row_real(smp.t_pull), row_real(h_norm(smp.v)), row_real(h_norm(smp.u)),
                                smp.doubling_change ? row_real(*smp.doubling_change) : "",
                                smp.converged ? "true" : "false"}}});
  return smp.converged ? kExitOk : kExitNonConvergence;
}

json fit_json(const RateFit& f) {
  return {{"slope", f.slope},          {"intercept", f.intercept},       {"delta_theory", f.delta_theory},
          {"eps_grid", f.eps_grid},    {"n_samples", f.n_samples},       {"residuals", f.residuals},
          {"mean_log_dist", f.mean_log_dist}, {"spread_log_dist", f.spread_log_dist}, {"counts", f.counts},
          {"inversions", f.inversions}};
}

std::string fit_svg(const json& fit) {
  SvgSeries pts{"per-level geometric mean", {}, {}, false};
  SvgSeries line{"fit slope " + format_real(fit.at("slope").get<double>()), {}, {}, true};
  const auto eps = fit.at("eps_grid").get<std::vector<double>>();
  const auto logs = fit.at("mean_log_dist").get<std::vector<double>>();
  const double a = fit.at("intercept").get<double>(), b = fit.at("slope").get<double>();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    pts.x.push_back(eps[i]);
    pts.y.push_back(std::exp(logs[i]));
    line.x.push_back(eps[i]);
    line.y.push_back(std::exp(a + b * std::log(eps[i])));
  }
  return svg_plot("distance to the deterministic attractor", "epsilon", "dist_H", {pts, line}, true, true);
}

int cmd_sweep(const RunRequest& req, Session& s) {
  const auto& c = req.config;
  const PhysicsParams p = make_physics(c, req.base_dir);
  if (c.noise.mode == NoiseMode::None) throw ValidationError("sweep: noise.mode must be additive or multiplicative");
  if (c.noise.eps_grid.empty()) throw ValidationError("sweep: noise.eps_grid is empty");
  SweepOptions so;
  so.eps_grid = c.noise.eps_grid;
  so.n_samples = c.noise.samples;
  so.seed_offset = c.noise.seed + req.seed_offset;
  so.t_pull = c.solver.t_pull;
  so.h = c.solver.h;
  so.ou_alpha = c.noise.ou_alpha;
  if (!c.noise.phi.empty()) so.phi = make_field(c.noise.phi, p.grid(), req.base_dir);
  so.initial = make_initial(c, p.grid(), req.base_dir);
  so.pullback_tolerance = c.solver.pullback_tol;
  so.workers = req.workers;
  so.singleton = make_singleton_options(c);
  so.solver = make_solver_options(c);
  so.solver.snapshot_every = 0;
  s.seeds()["samples_from"] = so.seed_offset;
  s.seeds()["samples"] = so.n_samples;
  s.seeds()["probes"] = so.singleton.seed;

  const SweepResult res = rate_sweep(p, c.noise.mode, so);
  CsvTable t{{"epsilon", "seed", "mode", "r", "dist_h", "t_pull", "converged"}, {}};
  for (const auto& r : res.records)
    t.rows.push_back({row_real(r.epsilon), std::to_string(r.seed), to_string(r.mode), row_real(r.r),
                      row_real(r.dist_h), row_real(r.t_pull), r.converged ? "true" : "false"});
  // the records are the primary product of a sweep
  s.text("sweep.csv", t.str());
  if (res.fit) {
    const json fj = fit_json(*res.fit);
    s.json_file("fit.json", fj);
    if (s.svg()) s.text("fit.svg", fit_svg(fj));
    std::cout << "fitted exponent " << format_real(res.fit->slope) << " (theory " << format_real(res.fit->delta_theory)
              << "), " << res.fit->n_samples << " samples, " << res.fit->inversions << " inversions" << std::endl;
    return kExitOk;
  }
  std::cout << "no fit: too few converged samples" << std::endl;
  return kExitNonConvergence;
}

int cmd_ou_diagnostics(const RunRequest& req, Session& s) {
  const auto& c = req.config;
  const double alpha = c.noise.ou_alpha, horizon = c.output.ou_horizon, h = c.solver.h;
  const std::uint64_t seed = c.noise.seed + req.seed_offset;
  s.seeds()["noise"] = seed;
  const auto m2 = stationary_moment(alpha, 2.0, c.output.ou_samples, seed);
  const auto m1 = stationary_moment(alpha, 1.0, c.output.ou_samples, seed);
  const OUPath ou = sample_ou(seed, alpha, -horizon, horizon, h);
  const double fwd = forward_time_average(ou, horizon);
  const double pb = pullback_average(ou, horizon, 2.0);
  std::size_t tempered = 0;
  for (std::size_t i = 0; i < c.output.ou_paths; ++i) {
    const OUPath z = sample_ou(seed + i, alpha, -horizon, 0.0, h);
    if (tempered_growth(z, 0.1, horizon / 10.0, horizon) <= 1e-3) ++tempered;
  }
  json windows = json::array();
  CsvTable t{{"statistic", "value", "reference", "tolerance"}, {}};
  auto row = [&](const std::string& name, double v, double ref, double tol) {
    t.rows.push_back({name, row_real(v), row_real(ref), row_real(tol)});
  };
  row("mean_abs_z2", m2.mean, 1.0 / (2.0 * alpha), 3.0 * m2.standard_error);
  row("mean_abs_z", m1.mean, ou_abs_moment(alpha, 1.0), 3.0 * m1.standard_error);
  row("forward_time_average", fwd, 0.0, 5.0 / std::sqrt(2.0 * alpha * horizon));
  row("pullback_average_z2", pb, 1.0 / (2.0 * alpha), 3.0 * std::sqrt(0.5 / (alpha * alpha * alpha * horizon)));
  row("tempered_fraction", static_cast<double>(tempered) / c.output.ou_paths, 0.95, 0.0);
  for (double k : {2.0, 4.0}) {
    const double expected = ou_abs_moment(alpha, k);
    const double run = window_average_running(ou, c.output.ou_window, horizon, k);
    const double lit = window_average_literal(ou, c.output.ou_window, horizon, k);
    windows.push_back({{"k", k}, {"expected", expected}, {"running", run}, {"literal", lit}});
    row("window_running_k" + format_real(k), run, expected, 0.2 * expected);
    row("window_literal_k" + format_real(k), lit, 0.0, 0.0);
  }
  s.csv_file("ou.csv", t);
  s.json_file("ou.json", {{"alpha", alpha},
                          {"seed", seed},
                          {"h", h},
                          {"horizon", horizon},
                          {"moments",
                           {{"abs_z2", {{"mean", m2.mean}, {"se", m2.standard_error}, {"expected", 1.0 / (2.0 * alpha)}}},
                            {"abs_z", {{"mean", m1.mean}, {"se", m1.standard_error}, {"expected", ou_abs_moment(alpha, 1.0)}}},
                            {"samples", m1.count}}},
                          {"forward_time_average", {{"value", fwd}, {"bound", 5.0 / std::sqrt(2.0 * alpha * horizon)}}},
                          {"pullback_average_z2", pb},
                          {"tempered", {{"fraction", static_cast<double>(tempered) / c.output.ou_paths},
                                        {"paths", c.output.ou_paths}, {"delta", 0.1}, {"threshold", 1e-3}}},
                          {"windows", windows}});
  if (c.output.dump_path) {
    std::ostringstream os;
    write_path_csv(os, sample_wiener(seed, -horizon, horizon, h), ou);
    s.text("ou_path.csv", os.str());
  }
  std::cout << "E|z|^2 = " << format_real(m2.mean) << " (expected " << format_real(1.0 / (2.0 * alpha)) << ")"
            << std::endl;
  return kExitOk;
}

int cmd_report(const RunRequest& req, Session& s) {
  const fs::path dir = req.out_dir;
  std::ostringstream o;
  auto load = [&](const char* name) -> std::optional<json> {
    if (!fs::exists(dir / name)) return std::nullopt;
    return json::parse(read_text(dir / name));
  };
  bool any = false;
  if (auto j = load("conditions.json")) {
    any = true;
    o << "Smallness condition (" << (*j)["regime"].get<std::string>() << "): holds = " << (*j)["holds"]
      << ", G = " << (*j)["grashof"] << ", threshold = " << (*j)["threshold"] << ", varrho = " << (*j)["varrho"]
      << ((*j)["provisional_constants"].get<bool>() ? " (provisional constants)" : "") << "\n";
  }
  if (auto j = load("simulate.json")) {
    any = true;
    o << "Simulation: T = " << (*j)["T"] << ", h = " << (*j)["h"] << ", noise " << (*j)["noise_mode"].get<std::string>();
    if (j->contains("max_energy_residual")) o << ", max energy residual " << (*j)["max_energy_residual"];
    o << "\n";
  }
  if (auto j = load("singleton.json")) {
    any = true;
    o << "Singleton search: converged = " << (*j)["converged"] << " at t = " << (*j)["time"]
      << ", steady residual " << (*j)["steady_residual"] << ", ||a*||_H = " << (*j)["a_star"]["h_norm"] << "\n";
    if (s.svg()) {
      SvgSeries d{"max pairwise distance", (*j)["log"]["t"].get<std::vector<double>>(),
                  (*j)["log"]["max_distance"].get<std::vector<double>>(), true};
      s.text("singleton.svg", svg_plot("probe contraction", "t", "max ||u_i - u_j||_H", {d}, false, true));
    }
  }
  if (auto j = load("pullback.json")) {
    any = true;
    o << "Pullback sample: mode " << (*j)["mode"].get<std::string>() << ", eps = " << (*j)["epsilon"]
      << ", seed " << (*j)["seed"] << ", t_pull = " << (*j)["t_pull"] << ", ||v||_H = " << (*j)["norms_v"]["h_norm"]
      << ", converged = " << (*j)["converged"] << "\n";
  }
  if (auto j = load("fit.json")) {
    any = true;
    o << "Rate fit: slope " << (*j)["slope"] << " vs theory " << (*j)["delta_theory"] << " over eps "
      << (*j)["eps_grid"].dump() << ", " << (*j)["n_samples"] << " samples, " << (*j)["inversions"]
      << " inversions\n";
    if (s.svg()) s.text("fit.svg", fit_svg(*j));
  }
  if (auto j = load("ou.json")) {
    any = true;
    o << "OU diagnostics (alpha = " << (*j)["alpha"] << "): E|z|^2 = " << (*j)["moments"]["abs_z2"]["mean"]
      << " +- " << (*j)["moments"]["abs_z2"]["se"] << ", E|z| = " << (*j)["moments"]["abs_z"]["mean"]
      << ", forward average " << (*j)["forward_time_average"]["value"] << ", tempered fraction "
      << (*j)["tempered"]["fraction"] << "\n";
  }
  if (!any) throw ValidationError("report: no result JSON found in " + dir.string());
  std::cout << o.str();
  s.text("report.txt", o.str());
  return kExitOk;
}

}  // namespace

int run(const RunRequest& req) {
  Session s(req);
  int code = kExitOk;
  if (req.subcommand == "check-conditions") code = cmd_check_conditions(req, s);
  else if (req.subcommand == "simulate") code = cmd_simulate(req, s);
  else if (req.subcommand == "singleton") code = cmd_singleton(req, s);
  else if (req.subcommand == "pullback") code = cmd_pullback(req, s);
  else if (req.subcommand == "sweep") code = cmd_sweep(req, s);
  else if (req.subcommand == "ou-diagnostics") code = cmd_ou_diagnostics(req, s);
  else if (req.subcommand == "report") code = cmd_report(req, s);
  else throw ValidationError("unknown subcommand '" + req.subcommand + "'");
  if (req.subcommand != "report") s.manifest(code);
  return code;
}

RunRequest request_from_manifest(const fs::path& path) {
  const json m = json::parse(read_text(path));
  RunRequest req;
  req.subcommand = m.at("subcommand").get<std::string>();
  req.config = parse_config(m.at("config").get<std::string>());
  req.base_dir = m.value("base_dir", std::string());
  req.seed_offset = m.value("seed_offset", std::uint64_t{0});
  req.workers = m.value("workers", 1u);
  return req;
}

namespace {

void setup_logging() {
  auto logger = spdlog::get("cbf");
  if (!logger) logger = spdlog::stderr_color_mt("cbf");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("CBF_LOG");
  const std::string level = env ? env : "warn";
  if (level == "error") spdlog::set_level(spdlog::level::err);
  else if (level == "info") spdlog::set_level(spdlog::level::info);
  else if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::set_level(spdlog::level::warn);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  setup_logging();
  CLI::App app{"Convective Brinkman-Forchheimer attractor lab"};
  std::string subcommand, config_path, manifest_path, out_dir = "out";
  unsigned workers = 1;
  std::optional<std::uint64_t> seed_offset;
  std::vector<std::string> formats;
  app.add_option("subcommand", subcommand, "check-conditions | simulate | singleton | pullback | sweep | "
                                           "ou-diagnostics | report")
      ->check(CLI::IsMember(subcommands()));
  app.add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_option("--manifest", manifest_path, "re-run the request recorded in a manifest")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed-offset", seed_offset, "added to every configured seed");
  app.add_option("--format", formats, "output formats (csv, json, svg); repeatable")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunRequest req;
    if (!manifest_path.empty()) {
      req = request_from_manifest(manifest_path);
      if (!subcommand.empty() && subcommand != req.subcommand)
        throw ValidationError("--manifest records '" + req.subcommand + "', not '" + subcommand + "'");
    } else {
      if (subcommand.empty()) throw ValidationError("a subcommand is required (or --manifest)");
      req.subcommand = subcommand;
      if (subcommand != "report") {
        if (config_path.empty()) throw ValidationError("--config is required for " + subcommand);
        req.config = parse_config(read_text(config_path));
        req.base_dir = fs::absolute(config_path).parent_path().string();
      }
      req.workers = workers;
    }
    if (seed_offset) req.seed_offset = *seed_offset;
    if (!formats.empty()) req.config.output.formats = formats;
    if (app.count("--workers")) req.workers = workers;
    req.out_dir = out_dir;
    return run(req);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << std::endl;
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << std::endl;
    return kExitValidation;
  } catch (const NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << std::endl;
    return kExitNonConvergence;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << std::endl;
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitOther;
  }
}

}  // namespace cbf
