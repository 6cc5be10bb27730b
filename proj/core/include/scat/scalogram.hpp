// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scat/common.hpp"
#include "scat/filterbank.hpp"

namespace scat {

/// Nonnegative time x log-frequency grid of wavelet-convolution moduli.
/// Values are stored row-major as [frame][bin].
struct Scalogram {
    std::vector<double> values;
    std::size_t frames = 0;
    std::size_t bins = 0;
    int hop = 1;               // samples per frame
    double sample_rate = 0.0;  // Hz of the underlying signal
    int Q = 0;
    int J = 0;
    std::vector<double> freq_axis;            // Hz, strictly increasing
    std::vector<std::pair<int, int>> labels;  // (j1, chi1) per bin
    std::vector<std::string> warnings;

    double& at(std::size_t t, std::size_t f) { return values[t * bins + f]; }
    double at(std::size_t t, std::size_t f) const { return values[t * bins + f]; }
    double frame_rate() const { return sample_rate / hop; }
};

/// Time-averaged scalogram (same grid, unit-DC-gain smoothing along time).
struct AveragedScalogram {
    std::vector<double> values;  // [frame][bin]
    std::size_t frames = 0;
    std::size_t bins = 0;
    int hop = 1;
    double sample_rate = 0.0;
    double T = 0.0;  // seconds

    double at(std::size_t t, std::size_t f) const { return values[t * bins + f]; }
};

/// Modulus of the FFT-based convolution of the reflect-padded signal with
/// each first-order filter, sampled every `hop` samples.
Scalogram compute_scalogram(const Signal& x, const WaveletFilterbank& bank,
                            int hop);

/// S1: lowpass the scalogram along time with phi_T.
AveragedScalogram average_time(const Scalogram& x1, const LowpassWindow& lowpass);

/// Split a binary log-frequency into octave index and chroma:
/// j1 = floor(log_lambda1), chi1 = Q * (log_lambda1 - j1).
/// The input must lie on the 1/Q grid.
std::pair<int, int> split_logfreq(double log_lambda1, int Q);

}  // namespace scat
