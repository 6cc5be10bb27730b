// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "scat/common.hpp"

namespace scat {

/// Analytic Gaussian-windowed exponential (Morlet-type) prototype, peak
/// normalized at a dimensionless center frequency of 1. A subtracted
/// Gaussian term makes the spectrum vanish exactly at zero frequency, and
/// the spectrum is defined as zero for negative frequencies.
struct MotherWavelet {
    double quality_factor = 0.0;
    double sigma = 0.0;       // spectral width (dimensionless)
    double kappa = 0.0;       // zero-frequency correction gain
    double peak_scale = 1.0;  // raw profile divided by this so max == 1
    double peak_omega = 1.0;  // where the max is attained
    double time_support = 0.0;  // effective duration (dimensionless time)

    std::vector<double> spectrum;  // sampled profile on [0, grid span)
    double grid_step = 0.0;

    /// Closed-form spectrum value at dimensionless frequency `omega`
    /// (zero for omega < 0).
    double evaluate(double omega) const;

    /// Measured -3 dB bandwidth of the sampled profile.
    double bandwidth_3db() const;
};

MotherWavelet design_mother_wavelet(double Q);

enum class BankKind { first_order_time, alpha_time, beta_logfreq, gamma_octave };

/// One filter of a bank. Time-domain banks carry a sampled transfer
/// function on the bank FFT grid; log-frequency and octave banks carry a
/// complex impulse response for direct convolution over their axis.
struct FilterMember {
    double center = 0.0;  // Hz (time banks) or cycles/octave (axis banks);
                          // magnitude only, the branch lives in `sign`
    int sign = 1;         // +1 / -1 bandpass branch, 0 for the lowpass member
    int j1 = 0;           // grid labels, first-order banks only
    int chi1 = 0;

    std::vector<double> spectrum;  // time banks: analytic transfer function
    std::vector<cplx> taps;        // axis banks: impulse response
    int taps_center = 0;

    /// Signed center (sign * center); the lowpass member maps to 0.
    double signed_center() const { return sign == 0 ? 0.0 : sign * center; }
};

struct WaveletFilterbank {
    BankKind kind = BankKind::first_order_time;
    double Q = 0.0;
    int J = 0;                 // octave span, first-order banks
    double sample_rate = 0.0;  // Hz, time banks
    double grid_step = 0.0;    // axis banks: spacing in octaves of the
                               // axis they convolve over
    std::size_t fft_size = 0;
    MotherWavelet mother;
    std::vector<FilterMember> members;

    bool is_time_bank() const {
        return kind == BankKind::first_order_time || kind == BankKind::alpha_time;
    }

    /// Sample an analytic transfer function for member `i` on an arbitrary
    /// FFT grid (full size, negative-frequency bins zero). Time banks only.
    std::vector<double> sample_spectrum(std::size_t i, std::size_t fft_size,
                                        double sample_rate) const;

    /// Transfer-function magnitude of member `i` at a signed frequency, in
    /// the member's own axis units.
    double response_at(std::size_t i, double freq) const;
};

/// First-order constant-Q bank: J*Q filters at centers 2^(j1 + chi1/Q)
/// spanning J octaves below Nyquist.
WaveletFilterbank build_first_order_bank(const MotherWavelet& mother, int Q,
                                         int J, double sample_rate,
                                         std::size_t fft_size);

/// Second-order bank geometry. `frame_rate` is the sampling rate of the
/// time axis the alpha bank convolves over; `bins_per_octave` the
/// resolution of the log-frequency axis; `octave_count` the octave span.
struct SpiralBankParams {
    double alpha_lo = 0.5;   // Hz
    double alpha_hi = 8.0;   // Hz
    double beta_max = 2.0;   // cycles/octave
    double gamma_max = 0.5;  // cycles/octave of pitch height
    int q2 = 1;
    double beta_octaves = 2.0;   // branch depth below beta_max
    double gamma_octaves = 1.0;  // branch depth below gamma_max
    int bins_per_octave = 12;
    int octave_count = 8;
    double frame_rate = 0.0;  // Hz; required for the alpha bank spectra
};

struct SpiralBanks {
    WaveletFilterbank alpha;
    WaveletFilterbank beta;
    WaveletFilterbank gamma;
};

SpiralBanks build_spiral_banks(const SpiralBankParams& params);

/// Single-tap identity bank for a given axis; convolving with it is an
/// exact passthrough. Test harness construct for reduction checks.
WaveletFilterbank make_identity_bank(BankKind kind, double grid_step);

/// Real averaging window with unit DC gain.
struct LowpassWindow {
    double T = 0.0;            // effective support, seconds
    double sample_rate = 0.0;  // Hz of the axis the taps convolve over
    std::vector<double> taps;  // sum normalized to exactly 1
    int center = 0;

    /// Transfer-function magnitude at frequency `freq` (Hz).
    double response_at(double freq) const;
};

/// Gaussian averaging window phi_T for Eq-style time averaging.
LowpassWindow make_lowpass_window(double T, double sample_rate);

/// Lowpass whose spectrum complements the bank below its lowest center, so
/// that the combined frame coverage stays flat down to the band edge. Used
/// as the default companion for frame audits.
LowpassWindow make_audit_lowpass(const WaveletFilterbank& bank);

struct LittlewoodPaleyProfile {
    std::vector<double> profile;  // renormalized so max == 1
    double freq_step = 0.0;       // Hz per bin
    double passband_lo = 0.0;     // Hz
    double passband_hi = 0.0;     // Hz
    double passband_min = 0.0;    // min of the renormalized profile there
};

/// Frame-coverage audit: |phi_hat|^2 + sum |psi_hat|^2 over the bank grid.
LittlewoodPaleyProfile littlewood_paley(const WaveletFilterbank& bank,
                                        const LowpassWindow& lowpass);

}  // namespace scat
