#include "cbf/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

// Per-mode skip threshold: a mode whose divergence is already at roundoff level is
// left untouched, which makes the projection exactly idempotent.
constexpr double kDivergenceFloor = 1e-14;

double volume(const TorusGrid& g) { return std::pow(g.period(), g.dim()); }

double lattice_count(const TorusGrid& g, int m) { return std::pow(static_cast<double>(m), g.dim()); }

std::size_t padded_index(const Wavevector& k, int dim, int m) {
  std::size_t idx = 0;
  for (int d = 0; d < dim; ++d) {
    int j = k[d] >= 0 ? k[d] : k[d] + m;
    idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(j);
  }
  return idx;
}

bool nyquist(const Wavevector& k, const TorusGrid& g) {
  for (int d = 0; d < g.dim(); ++d)
    if (k[d] == g.modes() / 2) return true;
  return false;
}

void project_mode(SpectralVelocity& u, std::size_t idx) {
  const TorusGrid& g = u.grid();
  const int dim = g.dim();
  if (!g.retained(idx)) {
    for (int c = 0; c < dim; ++c) u(c, idx) = 0.0;
    return;
  }
  const Wavevector& k = g.wavevector(idx);
  const double k2 = g.k_squared(idx);
  // A single subtraction leaves roundoff proportional to the removed part, which can
  // exceed the floor when most of the mode was longitudinal; a second pass settles it.
  for (int pass = 0; pass < 4; ++pass) {
    Complex kc = 0.0;
    double cnorm2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      kc += static_cast<double>(k[c]) * u(c, idx);
      cnorm2 += std::norm(u(c, idx));
    }
    if (std::abs(kc) <= kDivergenceFloor * std::sqrt(k2 * cnorm2)) return;
    const Complex q = kc / k2;
    for (int c = 0; c < dim; ++c) u(c, idx) -= static_cast<double>(k[c]) * q;
  }
}

// Collocation of a list of spectral blocks (each one lattice_size long) on an M lattice.
std::vector<double> blocks_to_physical(const TorusGrid& g, int m,
                                       const std::vector<std::vector<Complex>>& blocks) {
  const std::size_t n_pts = static_cast<std::size_t>(lattice_count(g, m) + 0.5);
  const double inv = 1.0 / lattice_count(g, g.modes());
  std::vector<double> out(blocks.size() * n_pts);
  std::vector<Complex> buf(n_pts);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::fill(buf.begin(), buf.end(), Complex{});
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
      const Wavevector& k = g.wavevector(idx);
      if (nyquist(k, g)) continue;
      buf[padded_index(k, g.dim(), m)] = blocks[b][idx];
    }
    fft_inplace(buf, g.dim(), m, FftDirection::Backward);
    double* dst = out.data() + b * n_pts;
    for (std::size_t p = 0; p < n_pts; ++p) dst[p] = buf[p].real() * inv;
  }
  return out;
}

}  // namespace

SpectralVelocity project_solenoidal(SpectralVelocity raw) {
  for (std::size_t idx = 0; idx < raw.grid().lattice_size(); ++idx) project_mode(raw, idx);
  return raw;
}

SpectralVelocity leray_project(const SpectralVelocity& raw) {
  for (int c = 0; c < raw.components(); ++c)
    if (raw(c, 0) != Complex{}) throw MeanViolationError("leray_project: nonzero mean coefficient");
  return project_solenoidal(raw);
}

SpectralVelocity stokes_apply(const SpectralVelocity& u) {
  const TorusGrid& g = u.grid();
  SpectralVelocity out(g);
  const double lam = g.lambda1();
  for (int c = 0; c < g.dim(); ++c)
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx)
      out(c, idx) = (lam * g.k_squared(idx)) * u(c, idx);
  return out;
}

PhysicalField to_physical(const SpectralVelocity& u, int m) {
  const TorusGrid& g = u.grid();
  std::vector<std::vector<Complex>> blocks;
  for (int c = 0; c < g.dim(); ++c)
    blocks.emplace_back(u.component(c).begin(), u.component(c).end());
  return PhysicalField{g, m, blocks_to_physical(g, m, blocks)};
}

PhysicalField to_physical_gradient(const SpectralVelocity& u, int m) {
  const TorusGrid& g = u.grid();
  const double s = g.wavenumber_scale();
  std::vector<std::vector<Complex>> blocks;
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      std::vector<Complex> b(g.lattice_size());
      for (std::size_t idx = 0; idx < g.lattice_size(); ++idx)
        b[idx] = Complex(0.0, s * g.wavevector(idx)[j]) * u(i, idx);
      blocks.push_back(std::move(b));
    }
  }
  return PhysicalField{g, m, blocks_to_physical(g, m, blocks)};
}

SpectralVelocity from_physical(const PhysicalField& field) {
  const TorusGrid& g = field.grid;
  const int m = field.lattice_modes;
  if (m < g.modes()) throw ValidationError("from_physical: lattice coarser than the grid");
  const int comps = static_cast<int>(field.values.size() / field.points());
  if (comps != g.dim()) throw ValidationError("from_physical: expected one block per component");
  const double scale = lattice_count(g, g.modes()) / lattice_count(g, m);

  SpectralVelocity out(g);
  std::vector<Complex> buf(field.points());
  for (int c = 0; c < comps; ++c) {
    auto src = field.component(c);
    for (std::size_t p = 0; p < buf.size(); ++p) buf[p] = Complex(src[p], 0.0);
    fft_inplace(buf, g.dim(), m, FftDirection::Forward);
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
      const Wavevector& k = g.wavevector(idx);
      out(c, idx) = nyquist(k, g) ? Complex{} : scale * buf[padded_index(k, g.dim(), m)];
    }
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
      const std::size_t mir = g.mirror(idx);
      if (mir < idx) continue;
      if (mir == idx) {
        out(c, idx) = Complex(out(c, idx).real(), 0.0);
        continue;
      }
      const Complex sym = 0.5 * (out(c, idx) + std::conj(out(c, mir)));
      out(c, idx) = sym;
      out(c, mir) = std::conj(sym);
    }
  }
  return out;
}

namespace {

SpectralVelocity advection_from(const PhysicalField& up, const PhysicalField& grad) {
  const TorusGrid& g = up.grid;
  const int dim = g.dim();
  PhysicalField prod{g, up.lattice_modes, std::vector<double>(up.values.size())};
  const std::size_t n = up.points();
  for (int i = 0; i < dim; ++i) {
    auto out = prod.component(i);
    for (int j = 0; j < dim; ++j) {
      auto uj = up.component(j);
      auto dv = grad.component(i * dim + j);
      for (std::size_t p = 0; p < n; ++p) out[p] += uj[p] * dv[p];
    }
  }
  return project_solenoidal(from_physical(prod));
}

struct DampingEval {
  SpectralVelocity value;
  double lr_power;
  double max_speed;
};

DampingEval damping_eval(const SpectralVelocity& u, double r) {
  const TorusGrid& g = u.grid();
  const int m = g.damping_modes();
  PhysicalField up = to_physical(u, m);
  const std::size_t n = up.points();
  const int dim = g.dim();
  const double half_exp = 0.5 * (r - 1.0);
  double power_sum = 0.0;
  double speed2 = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    double s = 0.0;
    for (int c = 0; c < dim; ++c) s += up.values[c * n + p] * up.values[c * n + p];
    speed2 = std::max(speed2, s);
    // |u|^{r-1} u extends continuously by 0 at u = 0.
    const double factor = s > 0.0 ? std::pow(s, half_exp) : 0.0;
    power_sum += factor * s;
    for (int c = 0; c < dim; ++c) up.values[c * n + p] *= factor;
  }
  const double lr = power_sum * volume(g) / lattice_count(g, m);
  return {project_solenoidal(from_physical(up)), lr, std::sqrt(speed2)};
}

void require_r(double r, const char* op) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw ValidationError(std::string(op) + ": r must be >= 1");
}

}  // namespace

SpectralVelocity bilinear_B(const SpectralVelocity& u, const SpectralVelocity& v) {
  require_same_grid(u.grid(), v.grid(), "bilinear_B");
  const int m = u.grid().padded_modes();
  return advection_from(to_physical(u, m), to_physical_gradient(v, m));
}

double trilinear_b(const SpectralVelocity& u, const SpectralVelocity& v, const SpectralVelocity& w) {
  require_same_grid(u.grid(), w.grid(), "trilinear_b");
  return inner_product(bilinear_B(u, v), w);
}

SpectralVelocity damping_C(const SpectralVelocity& u, double r) {
  require_r(r, "damping_C");
  if (r == 1.0) return u;
  return damping_eval(u, r).value;
}

NonlinearTerms nonlinear_terms(const SpectralVelocity& u, double r, bool with_damping) {
  require_r(r, "nonlinear_terms");
  const int m = u.grid().padded_modes();
  PhysicalField up = to_physical(u, m);
  SpectralVelocity adv = advection_from(up, to_physical_gradient(u, m));
  if (!with_damping) {
    double speed2 = 0.0;
    const std::size_t n = up.points();
    for (std::size_t p = 0; p < n; ++p) {
      double s = 0.0;
      for (int c = 0; c < u.components(); ++c) s += up.values[c * n + p] * up.values[c * n + p];
      speed2 = std::max(speed2, s);
    }
    return {std::move(adv), std::nullopt, std::sqrt(speed2), std::nullopt};
  }
  DampingEval d = damping_eval(u, r);
  if (r == 1.0) d.value = u;
  return {std::move(adv), std::move(d.value), d.max_speed, d.lr_power};
}

double inner_product(const SpectralVelocity& u, const SpectralVelocity& v) {
  require_same_grid(u.grid(), v.grid(), "inner_product");
  const TorusGrid& g = u.grid();
  const auto& a = u.coefficients();
  const auto& b = v.coefficients();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  const double n = lattice_count(g, g.modes());
  return sum * volume(g) / (n * n);
}

namespace {

double weighted_sum(const SpectralVelocity& u, int power) {
  const TorusGrid& g = u.grid();
  double sum = 0.0;
  for (int c = 0; c < g.dim(); ++c)
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx) {
      const double w = std::pow(g.lambda1() * g.k_squared(idx), power);
      sum += w * std::norm(u(c, idx));
    }
  const double n = lattice_count(g, g.modes());
  return sum * volume(g) / (n * n);
}

}  // namespace

double h_norm(const SpectralVelocity& u) { return std::sqrt(weighted_sum(u, 0)); }
double v_norm(const SpectralVelocity& u) { return std::sqrt(weighted_sum(u, 1)); }
double a_norm(const SpectralVelocity& u) { return std::sqrt(weighted_sum(u, 2)); }

double lr_power(const SpectralVelocity& u, double r) {
  require_r(r, "lr_power");
  return damping_eval(u, r).lr_power;
}

double lr_norm(const SpectralVelocity& u, double r) { return std::pow(lr_power(u, r), 1.0 / (r + 1.0)); }

FieldNorms norms(const SpectralVelocity& u, double r) {
  return {h_norm(u), v_norm(u), a_norm(u), lr_norm(u, r)};
}

double max_divergence(const SpectralVelocity& u) {
  const TorusGrid& g = u.grid();
  double worst = 0.0;
  for (std::size_t idx = 1; idx < g.lattice_size(); ++idx) {
    const Wavevector& k = g.wavevector(idx);
    Complex kc = 0.0;
    double cn = 0.0;
    for (int c = 0; c < g.dim(); ++c) {
      kc += static_cast<double>(k[c]) * u(c, idx);
      cn += std::norm(u(c, idx));
    }
    worst = std::max(worst, std::abs(kc) / std::max(1.0, std::sqrt(cn)));
  }
  return worst;
}

double hermitian_defect(const SpectralVelocity& u) {
  const TorusGrid& g = u.grid();
  double worst = 0.0;
  for (int c = 0; c < g.dim(); ++c)
    for (std::size_t idx = 0; idx < g.lattice_size(); ++idx)
      worst = std::max(worst, std::abs(u(c, g.mirror(idx)) - std::conj(u(c, idx))));
  return worst;
}

double max_speed(const SpectralVelocity& u) {
  PhysicalField up = to_physical(u, u.grid().damping_modes());
  const std::size_t n = up.points();
  double speed2 = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) s += up.values[c * n + p] * up.values[c * n + p];
    speed2 = std::max(speed2, s);
  }
  return std::sqrt(speed2);
}

}  // namespace cbf
