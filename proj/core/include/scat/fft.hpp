// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <complex>
#include <vector>

#include "scat/common.hpp"

namespace scat {

/// In-order complex DFT. Plans are cached per transform size.
std::vector<cplx> fft(const std::vector<cplx>& x);

/// Inverse complex DFT, normalized by 1/N.
std::vector<cplx> ifft(const std::vector<cplx>& x);

/// Direct "same"-size linear convolution with zero padding outside the
/// input. `taps[m]` multiplies `x[n - (m - center)]`; a single unit tap at
/// `center` is an exact identity (bit-for-bit).
std::vector<cplx> conv_same(const std::vector<cplx>& x,
                            const std::vector<cplx>& taps, int center);

/// FFT-based equivalent of conv_same. Matches the direct path to within
/// rounding on interior samples.
std::vector<cplx> fft_conv_same(const std::vector<cplx>& x,
                                const std::vector<cplx>& taps, int center);

/// Convolve a real sequence with an analytic filter given by its sampled
/// spectrum over the full FFT grid (negative-frequency bins zero). Output
/// is the complex analytic subband, same length as the padded input.
std::vector<cplx> analytic_filter(const std::vector<double>& padded,
                                  const std::vector<double>& spectrum);

}  // namespace scat
