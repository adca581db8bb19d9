#pragma once

#include <complex>
#include <span>

namespace cbf {

using Complex = std::complex<double>;

enum class FftDirection { Forward, Backward };

/// In-place unnormalized complex DFT over an n^dim row-major lattice.
///
/// Forward uses exp(-i k.x), backward exp(+i k.x); neither scales. Plans are
/// created once per (dim, n, direction) with FFTW_ESTIMATE, so results are
/// bit-reproducible run to run, and execution is safe from multiple threads.
void fft_inplace(std::span<Complex> data, int dim, int n, FftDirection direction);

}  // namespace cbf
