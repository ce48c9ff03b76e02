#pragma once

#include <complex>
#include <span>

namespace snls::fft {

using cplx = std::complex<double>;

/// In-place unnormalized forward DFT: F_m = sum_j f_j exp(-2 pi i j m / N).
void forward(std::span<cplx> data);

/// In-place unnormalized inverse DFT; divide by N to undo forward().
void inverse(std::span<cplx> data);

/// inverse() followed by division by N.
void inverse_normalized(std::span<cplx> data);

}  // namespace snls::fft
