// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <string>
#include <vector>

#include "scat/common.hpp"
#include "scat/filterbank.hpp"
#include "scat/scattering.hpp"

namespace scat {

/// Raised when a ridge-plane fit has too few or collinear support points.
class degenerate_fit : public std::runtime_error {
public:
    explicit degenerate_fit(const std::string& what)
        : std::runtime_error(what) {}
};

/// Closed-form time warp with evaluators for w, w', w'', w'''.
struct WarpSpec {
    enum class Family { identity, linear_scale, exponential };
    Family family = Family::identity;
    double rate = 1.0;       // linear_scale
    double base_rate = 1.0;  // exponential: w'(0), Hz
    double velocity = 0.0;   // exponential: octaves/s

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;
    double d3(double t) const;

    /// w''/w' divided by ln 2: drift in octaves per second.
    double octave_velocity(double t) const;

    void validate(double t0, double t1) const;

    static WarpSpec identity();
    static WarpSpec linear(double rate);
    static WarpSpec exponential(double base_rate, double velocity);
};

/// Gaussian lowpass spectral magnitude exp(-w^2 / (2 wc^2)).
struct GaussianEnvelope {
    double cutoff_hz = 1.0;

    double amplitude(double freq) const {
        return std::exp(-freq * freq / (2.0 * cutoff_hz * cutoff_hz));
    }
    /// |d log amplitude / d freq| at `freq`.
    double log_slope(double freq) const {
        return std::abs(freq) / (cutoff_hz * cutoff_hz);
    }
};

/// Harmonic excitation warped by `source_warp`, shaped by `envelope`
/// dilated through `filter_warp`.
struct SourceFilterSpec {
    WarpSpec source_warp;          // theta
    WarpSpec filter_warp;          // eta
    GaussianEnvelope envelope;
    int partial_count = 8;
    unsigned phase_seed = 0;       // 0 keeps all partial phases at zero
};

/// Additive rendering: sum over partials of
/// env(p theta'(t) / eta'(t)) * cos(2 pi p theta(t) + phase_p).
/// Partials that would cross Nyquist are dropped with a warning.
Signal synthesize(const SourceFilterSpec& spec, double duration,
                  double sample_rate, std::vector<std::string>* warnings = nullptr);

/// Ratios for the slow-deformation conditions; "much less than" is
/// operationalized as ratio <= 0.1. Condition (a) is the strict
/// partial-discrimination inequality Q > 2p.
struct AssumptionReport {
    double ratio_a = 0.0;  // 2p / Q, must be < 1 strictly
    double ratio_b = 0.0;  // ||theta''/theta'|| / (lambda1/Q)
    double ratio_c = 0.0;  // ||eta''/eta'|| / (lambda1/Q)
    double ratio_d = 0.0;  // spectral smoothness bound
    double ratio_avg_theta = 0.0;  // averaged-coefficient validity, x T
    double ratio_avg_eta = 0.0;
    bool a_ok = false, b_ok = false, c_ok = false, d_ok = false;

    bool all_ok() const { return a_ok && b_ok && c_ok && d_ok; }
};

AssumptionReport check_assumptions(const SourceFilterSpec& spec,
                                   const WaveletFilterbank& bank, int p,
                                   double t, double T = 0.0);

/// Plane alpha + v_theta beta + v_eta gamma = 0 in (Hz, cycles/octave).
struct RidgePlane {
    double v_theta = 0.0;  // octaves/s
    double v_eta = 0.0;    // octaves/s
    double t = 0.0;        // seconds
};

RidgePlane predicted_plane(const SourceFilterSpec& spec, double t);

struct ClosedFormResult {
    double value = 0.0;
    double factor_source = 0.0;  // chroma-convolved source term
    double factor_filter = 0.0;  // octave-convolved envelope term
    double factor_alpha = 0.0;   // |psi_hat_alpha| at the drift frequency
    bool degraded = false;       // an assumption ratio was violated
};

/// Product approximation of the spiral coefficient at one channel; see the
/// acceptance suite for the agreement band against the full pipeline.
ClosedFormResult closed_form_x2(const SourceFilterSpec& spec,
                                const WaveletFilterbank& first_order,
                                const WaveletFilterbank& alpha_bank,
                                const WaveletFilterbank& beta_bank,
                                const WaveletFilterbank& gamma_bank,
                                std::size_t lambda1_bin,
                                const SpiralIndex& lambda2, double t);

struct PlaneFit {
    RidgePlane plane;
    double residual = 0.0;  // weighted RMS of the plane equation over rms alpha
    std::size_t selected = 0;
};

/// Magnitude-weighted least-squares plane through the strongest channels
/// at one (frame, bin) of a spiral tensor.
PlaneFit fit_ridge_plane(const ScatteringTensor& tensor, std::size_t t_frame,
                         std::size_t lambda1_bin, double threshold_ratio);

}  // namespace scat
