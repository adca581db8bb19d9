#include "cbf/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if (!in) throw ValidationError("read_field: truncated snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const SpectralVelocity& u) {
  const TorusGrid& g = u.grid();
  out.write("CBFF", 4);
  put_le<std::uint32_t>(out, kFieldFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.modes()));
  put_le<double>(out, g.period());
  for (const Complex& c : u.coefficients()) {
    put_le<double>(out, c.real());
    put_le<double>(out, c.imag());
  }
}

SpectralVelocity read_field(std::istream& in, double dealias_factor) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "CBFF", 4) != 0) throw ValidationError("read_field: bad magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kFieldFormatVersion) throw ValidationError("read_field: unsupported version");
  const auto dim = get_le<std::uint32_t>(in);
  const auto n = get_le<std::uint32_t>(in);
  const auto period = get_le<double>(in);
  TorusGrid grid(static_cast<int>(dim), static_cast<int>(n), period, dealias_factor);
  std::vector<Complex> coeffs(grid.lattice_size() * grid.dim());
  for (auto& c : coeffs) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    c = Complex(re, im);
  }
  return SpectralVelocity(std::move(grid), std::move(coeffs));
}

void save_field(const std::filesystem::path& path, const SpectralVelocity& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("save_field: cannot open " + path.string());
  write_field(out, u);
}

SpectralVelocity load_field(const std::filesystem::path& path, double dealias_factor) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("load_field: cannot open " + path.string());
  return read_field(in, dealias_factor);
}

}  // namespace cbf
