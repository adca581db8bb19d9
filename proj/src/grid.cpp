#include "cbf/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cbf/errors.hpp"

namespace cbf {

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : ValidationError([&] {
        std::string msg = "invalid configuration:";
        for (const auto& d : diagnostics) msg += "\n  " + d;
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

namespace {

int even_ceil(double x) {
  int m = static_cast<int>(std::ceil(x - 1e-9));
  return m % 2 == 0 ? m : m + 1;
}

}  // namespace

TorusGrid::TorusGrid(int dim, int modes, double period, double dealias_factor)
    : dim_(dim), modes_(modes), period_(period), dealias_factor_(dealias_factor) {
  if (dim != 2 && dim != 3) throw ValidationError("grid: dim must be 2 or 3");
  if (modes < 8 || modes % 2 != 0) throw ValidationError("grid: N must be even and >= 8");
  if (!(period > 0.0) || !std::isfinite(period)) throw ValidationError("grid: L must be positive");
  if (!(dealias_factor >= 1.0)) throw ValidationError("grid: dealias_factor must be >= 1");

  padded_modes_ = even_ceil(dealias_factor * modes);
  damping_modes_ = even_ceil(std::max(2.0, dealias_factor) * modes);

  auto tables = std::make_shared<Tables>();
  std::size_t size = 1;
  for (int d = 0; d < dim; ++d) size *= static_cast<std::size_t>(modes);
  tables->size = size;
  tables->k.resize(size);
  tables->k2.resize(size);
  tables->retained.resize(size);
  tables->mirror.resize(size);

  for (std::size_t idx = 0; idx < size; ++idx) {
    Wavevector k{0, 0, 0};
    std::size_t rem = idx;
    for (int d = dim - 1; d >= 0; --d) {
      k[d] = fft_wavenumber(static_cast<int>(rem % modes), modes);
      rem /= modes;
    }
    tables->k[idx] = k;
    int k2 = 0;
    bool keep = true;
    for (int d = 0; d < dim; ++d) {
      k2 += k[d] * k[d];
      if (k[d] == modes / 2) keep = false;
    }
    tables->k2[idx] = k2;
    tables->retained[idx] = keep && k2 != 0;
  }
  tables_ = tables;
  for (std::size_t idx = 0; idx < size; ++idx) {
    const auto& k = tables->k[idx];
    Wavevector neg{0, 0, 0};
    for (int d = 0; d < dim; ++d) neg[d] = k[d] == modes / 2 ? k[d] : -k[d];
    tables->mirror[idx] = index_of(neg);
  }
}

double TorusGrid::lambda1() const noexcept {
  return 4.0 * std::numbers::pi * std::numbers::pi / (period_ * period_);
}

double TorusGrid::wavenumber_scale() const noexcept { return 2.0 * std::numbers::pi / period_; }

std::size_t TorusGrid::index_of(const Wavevector& k) const {
  std::size_t idx = 0;
  for (int d = 0; d < dim_; ++d) {
    if (k[d] <= -modes_ / 2 || k[d] > modes_ / 2)
      throw ValidationError("grid: wavevector component out of range");
    int j = k[d] >= 0 ? k[d] : k[d] + modes_;
    idx = idx * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(j);
  }
  return idx;
}

bool TorusGrid::operator==(const TorusGrid& other) const noexcept {
  return dim_ == other.dim_ && modes_ == other.modes_ && period_ == other.period_ &&
         dealias_factor_ == other.dealias_factor_;
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* operation) {
  if (!(a == b)) throw ValidationError(std::string(operation) + ": grid mismatch");
}

}  // namespace cbf
