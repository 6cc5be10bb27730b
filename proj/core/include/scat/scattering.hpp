// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <string>
#include <vector>

#include "scat/common.hpp"
#include "scat/filterbank.hpp"
#include "scat/scalogram.hpp"

namespace scat {

/// Second-order channel index. `beta`/`gamma` are signed, zero denoting
/// the lowpass member of their bank; unused axes stay at zero.
struct SpiralIndex {
    double alpha = 0.0;  // Hz
    double beta = 0.0;   // cycles/octave (signed)
    double gamma = 0.0;  // cycles/octave of pitch height (signed)

    bool operator==(const SpiralIndex&) const = default;
};

enum class ScatteringMode { time, joint, spiral };

/// Nonnegative coefficients indexed by (time frame, log-frequency bin,
/// second-order channel), stored row-major in that axis order.
struct ScatteringTensor {
    std::vector<double> values;
    std::size_t frames = 0;
    std::size_t bins = 0;
    std::vector<SpiralIndex> lambda2_axis;
    ScatteringMode mode = ScatteringMode::time;
    double averaging_T = 0.0;  // 0 when unaveraged
    int hop = 1;
    double sample_rate = 0.0;
    std::vector<double> freq_axis;
    std::vector<std::string> warnings;

    std::size_t channels() const { return lambda2_axis.size(); }
    double at(std::size_t t, std::size_t f, std::size_t l) const {
        return values[(t * bins + f) * lambda2_axis.size() + l];
    }
    double& at(std::size_t t, std::size_t f, std::size_t l) {
        return values[(t * bins + f) * lambda2_axis.size() + l];
    }
};

/// |x1 *t psi_alpha| per log-frequency row; optionally smoothed by phi_T.
ScatteringTensor time_scattering(const Scalogram& x1,
                                 const WaveletFilterbank& alpha_bank,
                                 const LowpassWindow* lowpass = nullptr);

/// |x1 *t psi_alpha *chi psi_beta|, the log-frequency convolution running
/// over the full rectilinear axis with zero padding.
ScatteringTensor joint_scattering(const Scalogram& x1,
                                  const WaveletFilterbank& alpha_bank,
                                  const WaveletFilterbank& beta_bank,
                                  const LowpassWindow* lowpass = nullptr);

/// |x1 *t psi_alpha *chi psi_beta *j psi_gamma|: after the log-frequency
/// stage, each fixed chroma is convolved across its octave samples.
ScatteringTensor spiral_scattering(const Scalogram& x1,
                                   const WaveletFilterbank& alpha_bank,
                                   const WaveletFilterbank& beta_bank,
                                   const WaveletFilterbank& gamma_bank,
                                   const LowpassWindow* lowpass = nullptr);

namespace detail {

/// Complex subband of every scalogram row for one alpha member, computed
/// on the reflect-padded frame axis. Exposed for stage-commutation checks.
std::vector<cplx> alpha_stage(const Scalogram& x1,
                              const WaveletFilterbank& alpha_bank,
                              std::size_t member);

/// Same convolution on an already-complex [frames x bins] field, so the
/// time stage can also run after a bin-axis stage.
std::vector<cplx> alpha_stage(const std::vector<cplx>& field, std::size_t frames,
                              std::size_t bins, double frame_rate,
                              const WaveletFilterbank& alpha_bank,
                              std::size_t member);

/// Convolve a [frames x bins] complex field along the bin axis with one
/// beta member (zero-padded, "same" output).
std::vector<cplx> beta_stage(const std::vector<cplx>& field, std::size_t frames,
                             std::size_t bins, const WaveletFilterbank& beta_bank,
                             std::size_t member);

/// Convolve along octaves at fixed chroma with one gamma member.
std::vector<cplx> gamma_stage(const std::vector<cplx>& field, std::size_t frames,
                              std::size_t bins, int Q,
                              const WaveletFilterbank& gamma_bank,
                              std::size_t member);

}  // namespace detail

}  // namespace scat
