#include "cbf/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

constexpr long kBlock = 512;

enum class Stream : std::uint64_t { WienerForward = 1, WienerBackward = 2, InnovationForward = 3,
                                    InnovationBackward = 4, Initial = 5 };

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, Stream s, std::uint64_t block) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(s) << 56) ^ block));
}

// Standard normals for step index j >= 0 of one stream, regenerated block by block.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, Stream s) : seed_(seed), stream_(s) {}

  double operator()(long j) {
    const long b = j / kBlock;
    if (b != block_) fill(b);
    return values_[static_cast<std::size_t>(j % kBlock)];
  }

 private:
  void fill(long b) {
    std::mt19937_64 rng(substream_seed(seed_, stream_, static_cast<std::uint64_t>(b)));
    std::normal_distribution<double> normal;
    values_.resize(kBlock);
    for (auto& v : values_) v = normal(rng);
    block_ = b;
  }

  std::uint64_t seed_;
  Stream stream_;
  long block_ = -1;
  std::vector<double> values_;
};

long lattice_index(double t, double h, const char* what) {
  const double q = t / h;
  const double j = std::nearbyint(q);
  if (!std::isfinite(q) || std::abs(q - j) > 1e-9 * std::max(1.0, std::abs(q)))
    throw ValidationError(std::string(what) + ": time " + std::to_string(t) + " is not a multiple of the step " +
                          std::to_string(h));
  return static_cast<long>(j);
}

void check_range(long j, long first, long last, double h) {
  if (j < first || j > last)
    throw ValidationError("time " + std::to_string(j * h) + " outside the path domain [" + std::to_string(first * h) +
                          ", " + std::to_string(last * h) + "]");
}

}  // namespace

double WienerPath::at_index(long j) const {
  check_range(j, first_, last_, h_);
  return w_[static_cast<std::size_t>(j - first_)];
}

double WienerPath::at(double t) const { return at_index(lattice_index(t, h_, "WienerPath")); }

WienerPath sample_wiener(std::uint64_t seed, double t_min, double t_max, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("sample_wiener: step must be positive");
  if (!(t_min <= 0.0 && 0.0 <= t_max && t_min < t_max))
    throw ValidationError("sample_wiener: need t_min <= 0 <= t_max with t_min < t_max");
  WienerPath p;
  p.seed_ = seed;
  p.h_ = h;
  p.first_ = lattice_index(t_min, h, "sample_wiener");
  p.last_ = lattice_index(t_max, h, "sample_wiener");
  p.w_.assign(static_cast<std::size_t>(p.last_ - p.first_ + 1), 0.0);
  const double sqh = std::sqrt(h);
  const auto zero = static_cast<std::size_t>(-p.first_);
  NormalStream fwd(seed, Stream::WienerForward);
  for (long j = 0; j < p.last_; ++j) p.w_[zero + j + 1] = p.w_[zero + j] + sqh * fwd(j);
  NormalStream bwd(seed, Stream::WienerBackward);
  for (long j = 0; j < -p.first_; ++j) p.w_[zero - j - 1] = p.w_[zero - j] - sqh * bwd(j);
  return p;
}

double stationary_draw(std::uint64_t seed, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("OU rate alpha must be positive");
  NormalStream init(seed, Stream::Initial);
  return init(0) / std::sqrt(2.0 * alpha);
}

double OUPath::at_index(long j) const {
  check_range(j, first_, last_, h_);
  return z_[static_cast<std::size_t>(j - first_)];
}

long OUPath::index_of(double s) const {
  const long j = lattice_index(s, h_, "OUPath");
  check_range(j, first_, last_, h_);
  return j;
}

double OUPath::at(double s) const { return at_index(index_of(s)); }

OUPath ou_from_wiener(const WienerPath& path, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("OU rate alpha must be positive");
  OUPath ou;
  ou.alpha_ = alpha;
  ou.z_.assign(static_cast<std::size_t>(path.last_index() - path.first_index() + 1), 0.0);
  const double z0 = stationary_draw(path.seed(), alpha);
  ou.seed_ = path.seed();
  ou.h_ = path.step();
  ou.first_ = path.first_index();
  ou.last_ = path.last_index();

  const double h = ou.h_;
  const double decay = std::exp(-alpha * h);
  // Exact step: X = int_0^h e^{-alpha(h-s)} dW(s), jointly Gaussian with dW.
  const double var_x = -std::expm1(-2.0 * alpha * h) / (2.0 * alpha);
  const double sd_x = std::sqrt(var_x);
  const double cov = -std::expm1(-alpha * h) / alpha;
  const double rho = std::min(1.0, cov / (sd_x * std::sqrt(h)));
  const double rho_perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));

  const auto zero = static_cast<std::size_t>(-ou.first_);
  ou.z_[zero] = z0;
  NormalStream w_fwd(path.seed(), Stream::WienerForward);
  NormalStream innov_fwd(path.seed(), Stream::InnovationForward);
  for (long j = 0; j < ou.last_; ++j) {
    const double x = sd_x * (rho * w_fwd(j) + rho_perp * innov_fwd(j));
    ou.z_[zero + j + 1] = decay * ou.z_[zero + j] + x;
  }
  // Stationary OU is reversible: z(t - h) given z(t) has the same transition law.
  NormalStream innov_bwd(path.seed(), Stream::InnovationBackward);
  for (long j = 0; j < -ou.first_; ++j) ou.z_[zero - j - 1] = decay * ou.z_[zero - j] + sd_x * innov_bwd(j);
  return ou;
}

OUPath sample_ou(std::uint64_t seed, double alpha, double t_min, double t_max, double h) {
  if (!(alpha > 0.0)) throw ValidationError("OU rate alpha must be positive");
  return ou_from_wiener(sample_wiener(seed, t_min, t_max, h), alpha);
}

double ou_shift_eval(const OUPath& ou, double s) { return ou.at(s); }

double integrate_path(const OUPath& ou, double a, double b, const std::function<double(double)>& g) {
  const long ja = ou.index_of(a);
  const long jb = ou.index_of(b);
  if (ja > jb) return -integrate_path(ou, b, a, g);
  if (ja == jb) return 0.0;
  double sum = 0.5 * (g(ou.at_index(ja)) + g(ou.at_index(jb)));
  for (long j = ja + 1; j < jb; ++j) sum += g(ou.at_index(j));
  return sum * ou.step();
}

MomentEstimate stationary_moment(double alpha, double power, std::size_t n, std::uint64_t seed_offset) {
  if (n < 2) throw ValidationError("stationary_moment: need at least two samples");
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::pow(std::abs(stationary_draw(seed_offset + i, alpha)), power);
    const double d = x - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (x - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

double ou_abs_moment(double alpha, double k) {
  return std::tgamma((1.0 + k) / 2.0) / std::sqrt(std::numbers::pi * std::pow(alpha, k));
}

double forward_time_average(const OUPath& ou, double t) {
  return integrate_path(ou, 0.0, t, [](double z) { return z; }) / t;
}

double pullback_average(const OUPath& ou, double t, double k) {
  return integrate_path(ou, -t, 0.0, [k](double z) { return std::pow(std::abs(z), k); }) / t;
}

double tempered_growth(const OUPath& ou, double delta, double t_lo, double t_hi) {
  const long lo = ou.index_of(-t_hi);
  const long hi = ou.index_of(-t_lo);
  double worst = 0.0;
  for (long j = lo; j <= hi; ++j) {
    const double t = -static_cast<double>(j) * ou.step();
    worst = std::max(worst, std::exp(-delta * t) * std::abs(ou.at_index(j)));
  }
  return worst;
}

double window_average_literal(const OUPath& ou, double window, double t, double k) {
  if (!(t > window)) throw ValidationError("window average needs t > T");
  return integrate_path(ou, -t, window - t, [k](double z) { return std::pow(std::abs(z), k); }) / (t - window);
}

double window_average_running(const OUPath& ou, double window, double t, double k) {
  if (!(t > window)) throw ValidationError("window average needs t > T");
  return integrate_path(ou, -t, -window, [k](double z) { return std::pow(std::abs(z), k); }) / (t - window);
}

void write_path_csv(std::ostream& out, const WienerPath& w, const OUPath& z) {
  if (w.step() != z.step() || w.first_index() != z.first_index() || w.last_index() != z.last_index())
    throw ValidationError("write_path_csv: Wiener and OU paths are on different lattices");
  out << "t,W,z\n";
  char buf[3][32];
  for (long j = w.first_index(); j <= w.last_index(); ++j) {
    const double vals[3] = {j * w.step(), w.at_index(j), z.at_index(j)};
    for (int c = 0; c < 3; ++c) std::snprintf(buf[c], sizeof buf[c], "%.17g", vals[c]);
    out << buf[0] << ',' << buf[1] << ',' << buf[2] << '\n';
  }
}

}  // namespace cbf
