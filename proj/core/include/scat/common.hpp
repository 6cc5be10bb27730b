// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scat {

using cplx = std::complex<double>;

/// Raised when a caller violates a documented precondition.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Uniformly sampled real waveform.
struct Signal {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz

    void validate() const {
        if (samples.empty())
            throw invalid_parameter("Signal: empty sample buffer");
        if (sample_rate <= 0.0)
            throw invalid_parameter("Signal: sample rate must be positive");
        for (double s : samples)
            if (!std::isfinite(s))
                throw invalid_parameter("Signal: non-finite sample");
    }
};

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Reflect-pad a real sequence by `pad_left`/`pad_right` samples.
/// Requires pad < x.size() on each side.
std::vector<double> reflect_pad(const std::vector<double>& x,
                                std::size_t pad_left, std::size_t pad_right);

}  // namespace scat
