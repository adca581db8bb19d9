#include "cbf/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "cbf/errors.hpp"
#include "cbf/field_io.hpp"
#include "cbf/output.hpp"
#include "cbf/spectral_ops.hpp"

namespace cbf {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<double> to_real(const std::string& text) {
  std::string t = trim(text);
  double factor = 1.0;
  // "pi", "2pi", "2*pi"
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    t.resize(t.size() - 2);
    if (!t.empty() && t.back() == '*') t.pop_back();
    if (t.empty() || t == "+") return factor;
    if (t == "-") return -factor;
  }
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto res = std::from_chars(t.data() + (t.size() > 1 && t[0] == '+' ? 1 : 0), end, v);
  if (res.ec != std::errc() || res.ptr != end || t.empty()) return std::nullopt;
  return v * factor;
}

template <class Int>
std::optional<Int> to_int(const std::string& text) {
  const std::string t = trim(text);
  Int v{};
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  return std::nullopt;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Reader {
 public:
  std::map<std::string, Entry> entries;  // "section.key"
  std::vector<std::string> errors;

  bool has(const std::string& path) const { return entries.count(path) != 0; }

  const Entry* get(const std::string& path) {
    auto it = entries.find(path);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void fail(const std::string& path, const Entry* e, const std::string& msg) {
    errors.push_back(e ? "line " + std::to_string(e->line) + ": " + path + ": " + msg : path + ": " + msg);
  }

  void real(const std::string& path, double& out) {
    if (const Entry* e = get(path)) {
      if (auto v = to_real(e->value); v && std::isfinite(*v))
        out = *v;
      else
        fail(path, e, "expected a real number, got '" + e->value + "'");
    }
  }
  void opt_real(const std::string& path, std::optional<double>& out) {
    if (has(path)) {
      double v = 0.0;
      const std::size_t before = errors.size();
      real(path, v);
      if (errors.size() == before) out = v;
    }
  }
  template <class Int>
  void integer(const std::string& path, Int& out) {
    if (const Entry* e = get(path)) {
      if (auto v = to_int<Int>(e->value))
        out = *v;
      else
        fail(path, e, "expected an integer, got '" + e->value + "'");
    }
  }
  void boolean(const std::string& path, bool& out) {
    if (const Entry* e = get(path)) {
      if (auto v = to_bool(e->value))
        out = *v;
      else
        fail(path, e, "expected true or false, got '" + e->value + "'");
    }
  }
};

std::string check_real_list(const std::string& text, std::vector<double>& out) {
  out.clear();
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  for (const auto& w : words(t)) {
    auto v = to_real(w);
    if (!v || !std::isfinite(*v)) return "expected a list of real numbers, got '" + w + "'";
    out.push_back(*v);
  }
  return "";
}

void field_spec(Reader& rd, const std::string& path, int dim, FieldSpec& out) {
  if (const Entry* e = rd.get(path)) {
    const std::string v = trim(e->value);
    const auto w = words(v);
    if (v.empty() || v == "none") {
      out.modes.clear();
      out.file.clear();
    } else if (!w.empty() && w[0] == "file") {
      out.file = trim(v.substr(4));
      if (out.file.empty()) rd.fail(path, e, "'file' needs a path");
    } else {
      try {
        out.modes = parse_mode_list(v, dim);
      } catch (const ValidationError& ex) {
        rd.fail(path, e, ex.what());
      }
    }
  }
  rd.opt_real(path + "_h_norm", out.h_norm);
}

std::string format_field_spec(const FieldSpec& f, int dim) {
  if (!f.file.empty()) return "file " + f.file;
  if (f.modes.empty()) return "none";
  return format_mode_list(f.modes, dim);
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"grid", {"dim", "N", "L", "dealias_factor"}},
      {"physics", {"mu", "beta", "r", "darcy", "forcing", "forcing_h_norm"}},
      {"noise", {"mode", "epsilon", "eps_grid", "ou_alpha", "phi", "phi_h_norm", "seed", "samples"}},
      {"solver",
       {"h", "T", "t_pull", "tol", "max_time", "probes", "probe_seed", "cfl_safety", "blowup_guard", "pullback_tol",
        "doubling_check", "initial", "initial_h_norm", "regime", "allow_condition_override", "contraction_pairs"}},
      {"constants", {"c1", "c2", "c3", "provisional"}},
      {"output", {"snapshot_every", "formats", "ou_horizon", "ou_samples", "ou_paths", "ou_window", "dump_path"}},
  };
  return keys;
}

void validate_field_spec(const FieldSpec& f, const std::string& path, const GridSection& g, double band,
                         std::vector<std::string>& errors) {
  if (f.h_norm && !(*f.h_norm > 0.0)) errors.push_back(path + "_h_norm: must be positive");
  if (f.h_norm && f.empty()) errors.push_back(path + "_h_norm: set but " + path + " is empty");
  for (const auto& m : f.modes) {
    int k2 = 0;
    bool inside = true;
    for (int d = 0; d < g.dim; ++d) {
      k2 += m.k[d] * m.k[d];
      if (2 * std::abs(m.k[d]) >= g.modes) inside = false;
    }
    std::ostringstream k;
    k << '(' << m.k[0] << ' ' << m.k[1];
    if (g.dim == 3) k << ' ' << m.k[2];
    k << ')';
    if (k2 == 0) errors.push_back(path + ": mode " + k.str() + " is the mean; fields must be mean-zero");
    else if (!inside) errors.push_back(path + ": mode " + k.str() + " is not resolved (|k_i| must be < N/2)");
    else if (band > 0.0 && k2 > band * band)
      errors.push_back(path + ": mode " + k.str() + " exceeds the band limit |k| <= N/4");
  }
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> e;
  const auto& g = c.grid;
  if (g.dim != 2 && g.dim != 3) e.push_back("grid.dim: must be 2 or 3");
  if (g.modes < 8 || g.modes % 2 != 0) e.push_back("grid.N: must be even and >= 8");
  if (!(g.period > 0.0)) e.push_back("grid.L: must be positive");
  if (!(g.dealias_factor >= 1.0)) e.push_back("grid.dealias_factor: must be >= 1");

  const auto& p = c.physics;
  if (!(p.mu > 0.0)) e.push_back("physics.mu: must be positive");
  if (!(p.beta >= 0.0)) e.push_back("physics.beta: must be >= 0");
  if (!(p.r >= 1.0)) e.push_back("physics.r: must be >= 1");
  if (!(p.darcy >= 0.0)) e.push_back("physics.darcy: must be >= 0");
  if (g.dim == 3 && p.r < 3.0) e.push_back("physics.r: 3D requires r ≥ 3");
  if (g.dim == 3 && p.r == 3.0 && 2.0 * p.beta * p.mu < 1.0)
    e.push_back("physics.beta: 3D with r = 3 requires 2 beta mu >= 1");
  validate_field_spec(p.forcing, "physics.forcing", g, 0.0, e);

  const auto& n = c.noise;
  if (!(n.epsilon >= 0.0 && n.epsilon <= 1.0)) e.push_back("noise.epsilon: must lie in [0, 1]");
  for (double x : n.eps_grid)
    if (!(x > 0.0 && x <= 1.0)) {
      e.push_back("noise.eps_grid: levels must lie in (0, 1]");
      break;
    }
  {
    auto sorted = n.eps_grid;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      e.push_back("noise.eps_grid: repeated level");
  }
  if (!(n.ou_alpha > 0.0)) e.push_back("noise.ou_alpha: must be positive");
  if (n.samples < 1) e.push_back("noise.samples: must be >= 1");
  if (n.mode == NoiseMode::Additive) {
    if (g.dim != 2) e.push_back("noise.mode: additive noise requires dim = 2 (no 3D additive theory)");
    if (n.phi.empty()) e.push_back("noise.phi: required for additive noise");
  } else if (!n.phi.empty()) {
    e.push_back("noise.phi: only used with additive noise");
  }
  validate_field_spec(n.phi, "noise.phi", g, g.modes / 4.0, e);

  const auto& s = c.solver;
  if (!(s.h > 0.0)) e.push_back("solver.h: must be positive");
  if (!(s.duration >= 0.0)) e.push_back("solver.T: must be >= 0");
  if (!(s.t_pull > 0.0)) e.push_back("solver.t_pull: must be positive");
  if (!(s.tol > 0.0)) e.push_back("solver.tol: must be positive");
  if (!(s.max_time > 0.0)) e.push_back("solver.max_time: must be positive");
  if (s.probes < 2) e.push_back("solver.probes: must be >= 2");
  if (!(s.cfl_safety > 0.0)) e.push_back("solver.cfl_safety: must be positive");
  if (!(s.blowup_guard > 0.0)) e.push_back("solver.blowup_guard: must be positive");
  if (!(s.pullback_tol > 0.0)) e.push_back("solver.pullback_tol: must be positive");
  if (s.contraction_pairs < 1) e.push_back("solver.contraction_pairs: must be >= 1");
  if (s.initial.kind == InitialSpec::Kind::Field) validate_field_spec(s.initial.field, "solver.initial", g, 0.0, e);
  if (s.regime) {
    const bool two = *s.regime == Regime::TwoD_C1 || *s.regime == Regime::TwoD_C3;
    if (two != (g.dim == 2)) e.push_back("solver.regime: " + to_string(*s.regime) + " does not match dim");
  }
  const auto& k = c.constants;
  if (!(k.c1 > 0.0) || !(k.c2 > 0.0) || !(k.c3 > 0.0)) e.push_back("constants: c1, c2, c3 must be positive");

  for (const auto& f : c.output.formats)
    if (f != "csv" && f != "json" && f != "svg") e.push_back("output.formats: unknown format '" + f + "'");
  if (!(c.output.ou_horizon > 0.0)) e.push_back("output.ou_horizon: must be positive");
  if (c.output.ou_samples < 2) e.push_back("output.ou_samples: must be >= 2");
  if (c.output.ou_paths < 1) e.push_back("output.ou_paths: must be >= 1");
  if (!(c.output.ou_window > 0.0 && c.output.ou_window < c.output.ou_horizon))
    e.push_back("output.ou_window: must lie in (0, ou_horizon)");
  return e;
}

}  // namespace

std::vector<ModeAmplitude> parse_mode_list(const std::string& text, int dim) {
  std::vector<ModeAmplitude> out;
  for (const auto& term : split(text, ';')) {
    if (term.empty()) continue;
    const auto halves = split(term, '|');
    if (halves.size() != 2) throw ValidationError("mode term '" + term + "' must look like 'k1 k2 | re im re im'");
    const auto ks = words(halves[0]);
    const auto as = words(halves[1]);
    if (static_cast<int>(ks.size()) != dim)
      throw ValidationError("mode term '" + term + "' needs " + std::to_string(dim) + " wavenumbers");
    if (static_cast<int>(as.size()) != 2 * dim)
      throw ValidationError("mode term '" + term + "' needs " + std::to_string(2 * dim) + " amplitude reals");
    ModeAmplitude m;
    for (int d = 0; d < dim; ++d) {
      auto k = to_int<int>(ks[d]);
      if (!k) throw ValidationError("bad wavenumber '" + ks[d] + "'");
      m.k[d] = *k;
      auto re = to_real(as[2 * d]);
      auto im = to_real(as[2 * d + 1]);
      if (!re || !im) throw ValidationError("bad amplitude in '" + term + "'");
      m.amplitude[d] = Complex(*re, *im);
    }
    out.push_back(m);
  }
  if (out.empty()) throw ValidationError("empty mode list");
  return out;
}

std::string format_mode_list(const std::vector<ModeAmplitude>& modes, int dim) {
  std::string s;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) s += "; ";
    for (int d = 0; d < dim; ++d) s += std::to_string(modes[i].k[d]) + " ";
    s += "|";
    for (int d = 0; d < dim; ++d)
      s += " " + format_real(modes[i].amplitude[d].real()) + " " + format_real(modes[i].amplitude[d].imag());
  }
  return s;
}

RunConfig parse_config(const std::string& text) {
  Reader rd;
  std::string section;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        rd.errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) {
        rd.errors.push_back("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
        section = "?";
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      rd.errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    if (section.empty()) {
      rd.errors.push_back("line " + std::to_string(lineno) + ": key '" + key + "' outside any section");
      continue;
    }
    if (section == "?") continue;
    const auto& keys = known_keys().at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      rd.errors.push_back("line " + std::to_string(lineno) + ": unknown key " + section + "." + key);
      continue;
    }
    const std::string path = section + "." + key;
    if (rd.has(path)) {
      rd.errors.push_back("line " + std::to_string(lineno) + ": duplicate key " + path + " (first on line " +
                          std::to_string(rd.entries[path].line) + ")");
      continue;
    }
    rd.entries[path] = {trim(line.substr(eq + 1)), lineno, false};
  }

  RunConfig c;
  rd.integer("grid.dim", c.grid.dim);
  rd.integer("grid.N", c.grid.modes);
  rd.real("grid.L", c.grid.period);
  rd.real("grid.dealias_factor", c.grid.dealias_factor);
  const int dim = (c.grid.dim == 2 || c.grid.dim == 3) ? c.grid.dim : 2;

  rd.real("physics.mu", c.physics.mu);
  rd.real("physics.beta", c.physics.beta);
  rd.real("physics.r", c.physics.r);
  rd.real("physics.darcy", c.physics.darcy);
  field_spec(rd, "physics.forcing", dim, c.physics.forcing);

  if (const Entry* e = rd.get("noise.mode")) {
    try {
      c.noise.mode = noise_mode_from_string(trim(e->value));
    } catch (const ValidationError& ex) {
      rd.fail("noise.mode", e, ex.what());
    }
  }
  rd.real("noise.epsilon", c.noise.epsilon);
  if (const Entry* e = rd.get("noise.eps_grid"))
    if (auto msg = check_real_list(e->value, c.noise.eps_grid); !msg.empty()) rd.fail("noise.eps_grid", e, msg);
  rd.real("noise.ou_alpha", c.noise.ou_alpha);
  field_spec(rd, "noise.phi", dim, c.noise.phi);
  rd.integer("noise.seed", c.noise.seed);
  rd.integer("noise.samples", c.noise.samples);

  auto& s = c.solver;
  rd.real("solver.h", s.h);
  rd.real("solver.T", s.duration);
  rd.real("solver.t_pull", s.t_pull);
  rd.real("solver.tol", s.tol);
  rd.real("solver.max_time", s.max_time);
  rd.integer("solver.probes", s.probes);
  rd.integer("solver.probe_seed", s.probe_seed);
  rd.real("solver.cfl_safety", s.cfl_safety);
  rd.real("solver.blowup_guard", s.blowup_guard);
  rd.real("solver.pullback_tol", s.pullback_tol);
  rd.boolean("solver.doubling_check", s.doubling_check);
  rd.boolean("solver.allow_condition_override", s.allow_condition_override);
  rd.integer("solver.contraction_pairs", s.contraction_pairs);
  if (const Entry* e = rd.get("solver.regime")) {
    try {
      s.regime = regime_from_string(trim(e->value));
    } catch (const ValidationError& ex) {
      rd.fail("solver.regime", e, ex.what());
    }
  }
  if (const Entry* e = rd.get("solver.initial")) {
    const auto w = words(e->value);
    if (w.empty() || (w.size() == 1 && w[0] == "zero")) {
      s.initial.kind = InitialSpec::Kind::Zero;
    } else if (w[0] == "probe") {
      s.initial.kind = InitialSpec::Kind::Probe;
      if (w.size() != 2 || !to_int<std::uint64_t>(w[1]))
        rd.fail("solver.initial", e, "expected 'probe SEED'");
      else
        s.initial.seed = *to_int<std::uint64_t>(w[1]);
    } else {
      s.initial.kind = InitialSpec::Kind::Field;
      e = nullptr;
      field_spec(rd, "solver.initial", dim, s.initial.field);
    }
  }
  if (s.initial.kind != InitialSpec::Kind::Field && rd.has("solver.initial_h_norm")) {
    const Entry* e = rd.get("solver.initial_h_norm");
    rd.fail("solver.initial_h_norm", e, "only applies to a mode-list or file initial state");
  }

  rd.real("constants.c1", c.constants.c1);
  rd.real("constants.c2", c.constants.c2);
  rd.real("constants.c3", c.constants.c3);
  rd.boolean("constants.provisional", c.constants.provisional);

  rd.integer("output.snapshot_every", c.output.snapshot_every);
  if (const Entry* e = rd.get("output.formats")) {
    std::string t = e->value;
    std::replace(t.begin(), t.end(), ',', ' ');
    c.output.formats = words(t);
  }
  rd.real("output.ou_horizon", c.output.ou_horizon);
  rd.integer("output.ou_samples", c.output.ou_samples);
  rd.integer("output.ou_paths", c.output.ou_paths);
  rd.real("output.ou_window", c.output.ou_window);
  rd.boolean("output.dump_path", c.output.dump_path);

  auto errors = std::move(rd.errors);
  for (auto& msg : validate(c)) errors.push_back(std::move(msg));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  const int dim = c.grid.dim;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) o << key << " = " << format_real(*v) << "\n";
  };
  o << "[grid]\n"
    << "dim = " << c.grid.dim << "\n"
    << "N = " << c.grid.modes << "\n"
    << "L = " << format_real(c.grid.period) << "\n"
    << "dealias_factor = " << format_real(c.grid.dealias_factor) << "\n\n";
  o << "[physics]\n"
    << "mu = " << format_real(c.physics.mu) << "\n"
    << "beta = " << format_real(c.physics.beta) << "\n"
    << "r = " << format_real(c.physics.r) << "\n"
    << "darcy = " << format_real(c.physics.darcy) << "\n"
    << "forcing = " << format_field_spec(c.physics.forcing, dim) << "\n";
  opt("forcing_h_norm", c.physics.forcing.h_norm);
  o << "\n[noise]\n"
    << "mode = " << to_string(c.noise.mode) << "\n"
    << "epsilon = " << format_real(c.noise.epsilon) << "\n"
    << "eps_grid =";
  for (double e : c.noise.eps_grid) o << ' ' << format_real(e);
  o << "\nou_alpha = " << format_real(c.noise.ou_alpha) << "\n"
    << "phi = " << format_field_spec(c.noise.phi, dim) << "\n";
  opt("phi_h_norm", c.noise.phi.h_norm);
  o << "seed = " << c.noise.seed << "\n"
    << "samples = " << c.noise.samples << "\n\n";
  const auto& s = c.solver;
  o << "[solver]\n"
    << "h = " << format_real(s.h) << "\n"
    << "T = " << format_real(s.duration) << "\n"
    << "t_pull = " << format_real(s.t_pull) << "\n"
    << "tol = " << format_real(s.tol) << "\n"
    << "max_time = " << format_real(s.max_time) << "\n"
    << "probes = " << s.probes << "\n"
    << "probe_seed = " << s.probe_seed << "\n"
    << "cfl_safety = " << format_real(s.cfl_safety) << "\n"
    << "blowup_guard = " << format_real(s.blowup_guard) << "\n"
    << "pullback_tol = " << format_real(s.pullback_tol) << "\n"
    << "doubling_check = " << (s.doubling_check ? "true" : "false") << "\n";
  switch (s.initial.kind) {
    case InitialSpec::Kind::Zero: o << "initial = zero\n"; break;
    case InitialSpec::Kind::Probe: o << "initial = probe " << s.initial.seed << "\n"; break;
    case InitialSpec::Kind::Field:
      o << "initial = " << format_field_spec(s.initial.field, dim) << "\n";
      opt("initial_h_norm", s.initial.field.h_norm);
      break;
  }
  if (s.regime) o << "regime = " << to_string(*s.regime) << "\n";
  o << "allow_condition_override = " << (s.allow_condition_override ? "true" : "false") << "\n"
    << "contraction_pairs = " << s.contraction_pairs << "\n\n";
  o << "[constants]\n"
    << "c1 = " << format_real(c.constants.c1) << "\n"
    << "c2 = " << format_real(c.constants.c2) << "\n"
    << "c3 = " << format_real(c.constants.c3) << "\n"
    << "provisional = " << (c.constants.provisional ? "true" : "false") << "\n\n";
  o << "[output]\n"
    << "snapshot_every = " << c.output.snapshot_every << "\n"
    << "formats =";
  for (const auto& f : c.output.formats) o << ' ' << f;
  o << "\nou_horizon = " << format_real(c.output.ou_horizon) << "\n"
    << "ou_samples = " << c.output.ou_samples << "\n"
    << "ou_paths = " << c.output.ou_paths << "\n"
    << "ou_window = " << format_real(c.output.ou_window) << "\n"
    << "dump_path = " << (c.output.dump_path ? "true" : "false") << "\n";
  return o.str();
}

TorusGrid make_grid(const RunConfig& c) {
  return TorusGrid(c.grid.dim, c.grid.modes, c.grid.period, c.grid.dealias_factor);
}

SpectralVelocity make_field(const FieldSpec& spec, const TorusGrid& grid, const std::string& base_dir) {
  if (spec.empty()) return SpectralVelocity(grid);
  SpectralVelocity u(grid);
  if (!spec.file.empty()) {
    std::filesystem::path p(spec.file);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    u = load_field(p, grid.dealias_factor());
    require_same_grid(u.grid(), grid, ("field file " + p.string()).c_str());
    u = project_solenoidal(u);
  } else {
    u = leray_project(mode_field(grid, spec.modes));
  }
  if (spec.h_norm) u = with_h_norm(u, *spec.h_norm);
  return u;
}

PhysicsParams make_physics(const RunConfig& c, const std::string& base_dir) {
  const TorusGrid grid = make_grid(c);
  PhysicsParams p{c.physics.mu, c.physics.beta, c.physics.r, c.physics.darcy,
                  make_field(c.physics.forcing, grid, base_dir)};
  p.validate();
  return p;
}

NoiseConfig make_noise(const RunConfig& c, const TorusGrid& grid, const std::string& base_dir) {
  NoiseConfig n{c.noise.mode, c.noise.epsilon, std::nullopt, c.noise.ou_alpha, c.noise.seed};
  if (!c.noise.phi.empty()) n.phi = make_field(c.noise.phi, grid, base_dir);
  n.validate(grid);
  return n;
}

SolverOptions make_solver_options(const RunConfig& c) {
  return {c.solver.cfl_safety, c.solver.blowup_guard, c.output.snapshot_every, true};
}

SingletonOptions make_singleton_options(const RunConfig& c) {
  SingletonOptions o;
  o.tol = c.solver.tol;
  o.max_time = c.solver.max_time;
  o.probes = c.solver.probes;
  o.h = c.solver.h;
  o.seed = c.solver.probe_seed;
  o.solver = make_solver_options(c);
  o.solver.snapshot_every = 0;
  o.allow_condition_override = c.solver.allow_condition_override;
  o.regime = c.solver.regime;
  o.constants = c.constants;
  return o;
}

SpectralVelocity make_initial(const RunConfig& c, const TorusGrid& grid, const std::string& base_dir) {
  switch (c.solver.initial.kind) {
    case InitialSpec::Kind::Zero: return SpectralVelocity(grid);
    case InitialSpec::Kind::Probe: return probe_field(grid, c.solver.initial.seed);
    case InitialSpec::Kind::Field: return make_field(c.solver.initial.field, grid, base_dir);
  }
  return SpectralVelocity(grid);
}

}  // namespace cbf
