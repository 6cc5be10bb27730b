// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/scalogram.hpp"

#include <algorithm>
#include <cmath>

#include "scat/fft.hpp"

namespace scat {

Scalogram compute_scalogram(const Signal& x, const WaveletFilterbank& bank,
                            int hop) {
    x.validate();
    if (bank.kind != BankKind::first_order_time)
        throw invalid_parameter("compute_scalogram: need a first-order bank");
    if (hop < 1) throw invalid_parameter("compute_scalogram: hop must be >= 1");
    if (x.sample_rate != bank.sample_rate)
        throw invalid_parameter("compute_scalogram: sample rate mismatch");

    const std::size_t n = x.samples.size();
    const double lowest = bank.members.front().center;
    const double support_s = bank.mother.time_support / lowest;  // seconds
    std::size_t pad = static_cast<std::size_t>(
        std::ceil(support_s / 2.0 * x.sample_rate));
    pad = std::min(pad, n - 1);

    Scalogram out;
    out.hop = hop;
    out.sample_rate = x.sample_rate;
    out.Q = static_cast<int>(bank.Q);
    out.J = bank.J;
    out.bins = bank.members.size();
    out.frames = (n - 1) / static_cast<std::size_t>(hop) + 1;
    out.values.assign(out.frames * out.bins, 0.0);
    for (const auto& m : bank.members) {
        out.freq_axis.push_back(m.center);
        out.labels.emplace_back(m.j1, m.chi1);
    }
    if (static_cast<double>(n) < support_s * x.sample_rate)
        out.warnings.push_back(
            "signal shorter than the longest filter support; output is "
            "boundary-dominated");

    const auto padded = reflect_pad(x.samples, pad, pad);
    const std::size_t nfft = next_pow2(padded.size());
    std::vector<double> grid(nfft, 0.0);
    std::copy(padded.begin(), padded.end(), grid.begin());

    std::vector<cplx> buf(nfft);
    for (std::size_t i = 0; i < nfft; ++i) buf[i] = cplx(grid[i], 0.0);
    const auto xf = fft(buf);

    std::vector<cplx> prod(nfft);
    for (std::size_t fi = 0; fi < bank.members.size(); ++fi) {
        const auto spec = bank.sample_spectrum(fi, nfft, x.sample_rate);
        for (std::size_t k = 0; k < nfft; ++k) prod[k] = xf[k] * spec[k];
        const auto sub = ifft(prod);
        for (std::size_t t = 0; t < out.frames; ++t) {
            const std::size_t idx = pad + t * static_cast<std::size_t>(hop);
            out.at(t, fi) = std::abs(sub[idx]);
        }
    }
    return out;
}

AveragedScalogram average_time(const Scalogram& x1, const LowpassWindow& lowpass) {
    if (lowpass.T < static_cast<double>(x1.hop) / x1.sample_rate)
        throw invalid_parameter("average_time: T below the hop duration");

    AveragedScalogram out;
    out.frames = x1.frames;
    out.bins = x1.bins;
    out.hop = x1.hop;
    out.sample_rate = x1.sample_rate;
    out.T = lowpass.T;
    out.values.assign(x1.values.size(), 0.0);

    const int k = static_cast<int>(lowpass.taps.size());
    const int n = static_cast<int>(x1.frames);
    for (std::size_t f = 0; f < x1.bins; ++f) {
        for (int t = 0; t < n; ++t) {
            double acc = 0.0;
            for (int m = 0; m < k; ++m) {
                int j = t - (m - lowpass.center);
                // Reflect at both ends so a constant row stays constant.
                while (j < 0 || j >= n) {
                    if (j < 0) j = -j;
                    if (j >= n) j = 2 * (n - 1) - j;
                }
                acc += lowpass.taps[static_cast<std::size_t>(m)] *
                       x1.at(static_cast<std::size_t>(j), f);
            }
            out.values[static_cast<std::size_t>(t) * x1.bins + f] = acc;
        }
    }
    return out;
}

std::pair<int, int> split_logfreq(double log_lambda1, int Q) {
    if (Q < 1) throw invalid_parameter("split_logfreq: Q must be >= 1");
    const double scaled = log_lambda1 * Q;
    const double m = std::round(scaled);
    if (std::abs(scaled - m) > 1e-9 * std::max(1.0, std::abs(scaled)) + 1e-9)
        throw invalid_parameter("split_logfreq: input off the 1/Q grid");
    const long mi = static_cast<long>(m);
    long j1 = mi / Q;
    if (mi % Q != 0 && mi < 0) --j1;
    const long chi1 = mi - j1 * Q;
    return {static_cast<int>(j1), static_cast<int>(chi1)};
}

}  // namespace scat
