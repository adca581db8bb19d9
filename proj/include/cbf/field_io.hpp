#pragma once

#include <filesystem>
#include <iosfwd>

#include "cbf/spectral_field.hpp"

namespace cbf {

/// Binary snapshot layout, all little-endian:
///   "CBFF" | u32 version (1) | u32 dim | u32 N | f64 L |
///   dim blocks of N^dim complex coefficients (f64 re, f64 im), row-major lattice order.
/// The dealias factor is not stored; readers supply it.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

void write_field(std::ostream& out, const SpectralVelocity& u);
SpectralVelocity read_field(std::istream& in, double dealias_factor = 1.5);

void save_field(const std::filesystem::path& path, const SpectralVelocity& u);
SpectralVelocity load_field(const std::filesystem::path& path, double dealias_factor = 1.5);

}  // namespace cbf
