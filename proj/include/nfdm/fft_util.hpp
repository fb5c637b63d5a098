#pragma once

#include <cstddef>

#include "nfdm/types.hpp"

namespace nfdm {

/// In-place complex FFT, kernel e^{-j 2 pi k n / N} forward. Unscaled;
/// inverse applies 1/N. Plans are cached per (thread, size), so hot loops
/// of repeated sizes pay one plan each.
void fft_inplace(CVec& data);
void ifft_inplace(CVec& data);

CVec fft(const CVec& data);
CVec ifft(const CVec& data);

/// DFT bin frequency in rad per time-unit for bin k of an N-point grid with
/// sample spacing dt (signed, bins above N/2 wrap negative).
double dft_omega(std::size_t k, std::size_t N, double dt);

std::size_t next_pow2(std::size_t n);

}  // namespace nfdm
