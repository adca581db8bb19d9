#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace cbf {

/// Two-sided Brownian path on the lattice t_j = j*h, j in [first, last], with W(0) = 0.
///
/// Increments come from seed sub-streams indexed by branch and block of 512 steps,
/// so a longer horizon reproduces every value of a shorter one.
class WienerPath {
 public:
  std::uint64_t seed() const noexcept { return seed_; }
  double step() const noexcept { return h_; }
  long first_index() const noexcept { return first_; }
  long last_index() const noexcept { return last_; }
  double t_min() const noexcept { return first_ * h_; }
  double t_max() const noexcept { return last_ * h_; }

  double at_index(long j) const;
  /// W(t); t must be a lattice time inside the path.
  double at(double t) const;

 private:
  friend WienerPath sample_wiener(std::uint64_t, double, double, double);
  std::uint64_t seed_ = 0;
  double h_ = 0.0;
  long first_ = 0;
  long last_ = 0;
  std::vector<double> w_;
};

WienerPath sample_wiener(std::uint64_t seed, double t_min, double t_max, double h);

/// Stationary Ornstein-Uhlenbeck path z(theta_t omega) on the same lattice as its Wiener path.
///
/// z(0) is a stationary draw. For t > 0 the exact one-step law is used jointly with the
/// Wiener increment, so z(t) - e^{-a h} z(t-h) is consistent with W on that step.
/// For t < 0 the process is generated backwards through the time-reversed OU law.
class OUPath {
 public:
  double alpha() const noexcept { return alpha_; }
  std::uint64_t seed() const noexcept { return seed_; }
  double step() const noexcept { return h_; }
  long first_index() const noexcept { return first_; }
  long last_index() const noexcept { return last_; }
  double t_min() const noexcept { return first_ * h_; }
  double t_max() const noexcept { return last_ * h_; }

  double at_index(long j) const;
  /// z(theta_s omega); throws ValidationError off the lattice or outside the path.
  double at(double s) const;
  /// Lattice index of s (same checks as at()).
  long index_of(double s) const;

 private:
  friend OUPath ou_from_wiener(const WienerPath&, double);
  double alpha_ = 0.0;
  std::uint64_t seed_ = 0;
  double h_ = 0.0;
  long first_ = 0;
  long last_ = 0;
  std::vector<double> z_;
};

OUPath ou_from_wiener(const WienerPath& path, double alpha);

/// Shorthand for sample_wiener followed by ou_from_wiener.
OUPath sample_ou(std::uint64_t seed, double alpha, double t_min, double t_max, double h);

/// z(theta_s omega).
double ou_shift_eval(const OUPath& ou, double s);

/// The stationary initial draw z(0) alone, without building a path.
double stationary_draw(std::uint64_t seed, double alpha);

/// Trapezoid integral of g(z(s)) over the lattice interval [a, b].
double integrate_path(const OUPath& ou, double a, double b, const std::function<double(double)>& g);

struct MomentEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};

/// E|z|^power over independent stationary draws z(0), seeds offset .. offset + n - 1.
MomentEstimate stationary_moment(double alpha, double power, std::size_t n, std::uint64_t seed_offset = 0);

/// Gamma((1+k)/2) / sqrt(pi alpha^k).
double ou_abs_moment(double alpha, double k);

/// (1/t) * integral_0^t z ds.
double forward_time_average(const OUPath& ou, double t);

/// (1/t) * integral_{-t}^0 |z|^k ds.
double pullback_average(const OUPath& ou, double t, double k);

/// max over lattice t in [t_lo, t_hi] of e^{-delta t} |z(theta_{-t} omega)|.
double tempered_growth(const OUPath& ou, double delta, double t_lo, double t_hi);

/// (1/(t - T)) * integral_{-t}^{T - t} |z|^k ds, as written in the lemma (tends to 0).
double window_average_literal(const OUPath& ou, double window, double t, double k);

/// (1/(t - T)) * integral_{-t}^{-T} |z|^k ds, which settles near E|z|^k.
double window_average_running(const OUPath& ou, double window, double t, double k);

/// CSV with header t,W,z over the common lattice.
void write_path_csv(std::ostream& out, const WienerPath& w, const OUPath& z);

}  // namespace cbf
