#pragma once

// Thin FFTW wrapper. Plans are cached per (shape, direction) and executed
// through the new-array interface, so concurrent calls are safe.

#include <complex>
#include <cstddef>
#include <span>

namespace kwlab::fft {

using cplx = std::complex<double>;

enum class Direction { Forward = -1, Backward = +1 };

/// Unnormalized 1-D DFT: out[j] = sum_n in[n] exp(sign * 2 pi i j n / N).
void dft(std::span<const cplx> in, std::span<cplx> out, Direction dir);

/// Unnormalized 2-D DFT of a row-major rows x cols array.
void dft2(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out,
          Direction dir);

}  // namespace kwlab::fft
