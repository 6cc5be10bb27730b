// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scat/fft.hpp"

namespace scat {

namespace detail {

std::vector<cplx> alpha_stage(const std::vector<cplx>& field, std::size_t frames,
                              std::size_t bins, double frame_rate,
                              const WaveletFilterbank& alpha_bank,
                              std::size_t member) {
    const FilterMember& fm = alpha_bank.members.at(member);
    const double support_s = alpha_bank.mother.time_support / fm.center;
    std::size_t pad =
        static_cast<std::size_t>(std::ceil(support_s / 2.0 * frame_rate));
    pad = std::min(pad, frames - 1);
    const std::size_t nfft = next_pow2(frames + 2 * pad);
    const auto spec = alpha_bank.sample_spectrum(member, nfft, frame_rate);

    std::vector<cplx> out(frames * bins);
    std::vector<cplx> buf(nfft);
    auto reflect = [frames](long t) {
        const long n = static_cast<long>(frames);
        while (t < 0 || t >= n) {
            if (t < 0) t = -t;
            if (t >= n) t = 2 * (n - 1) - t;
        }
        return static_cast<std::size_t>(t);
    };
    for (std::size_t f = 0; f < bins; ++f) {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (std::size_t i = 0; i < frames + 2 * pad; ++i)
            buf[i] = field[reflect(static_cast<long>(i) -
                                   static_cast<long>(pad)) *
                               bins +
                           f];
        auto xf = fft(buf);
        for (std::size_t k = 0; k < nfft; ++k) xf[k] *= spec[k];
        const auto sub = ifft(xf);
        for (std::size_t t = 0; t < frames; ++t)
            out[t * bins + f] = sub[pad + t];
    }
    return out;
}

std::vector<cplx> alpha_stage(const Scalogram& x1,
                              const WaveletFilterbank& alpha_bank,
                              std::size_t member) {
    std::vector<cplx> field(x1.frames * x1.bins);
    for (std::size_t t = 0; t < x1.frames; ++t)
        for (std::size_t f = 0; f < x1.bins; ++f)
            field[t * x1.bins + f] = cplx(x1.at(t, f), 0.0);
    return alpha_stage(field, x1.frames, x1.bins, x1.frame_rate(), alpha_bank,
                       member);
}

std::vector<cplx> beta_stage(const std::vector<cplx>& field, std::size_t frames,
                             std::size_t bins, const WaveletFilterbank& beta_bank,
                             std::size_t member) {
    const FilterMember& fm = beta_bank.members.at(member);
    std::vector<cplx> out(field.size());
    std::vector<cplx> col(bins);
    for (std::size_t t = 0; t < frames; ++t) {
        std::copy(field.begin() + static_cast<long>(t * bins),
                  field.begin() + static_cast<long>((t + 1) * bins), col.begin());
        auto conv = conv_same(col, fm.taps, fm.taps_center);
        std::copy(conv.begin(), conv.end(),
                  out.begin() + static_cast<long>(t * bins));
    }
    return out;
}

std::vector<cplx> gamma_stage(const std::vector<cplx>& field, std::size_t frames,
                              std::size_t bins, int Q,
                              const WaveletFilterbank& gamma_bank,
                              std::size_t member) {
    const FilterMember& fm = gamma_bank.members.at(member);
    std::vector<cplx> out(field.size());
    for (std::size_t t = 0; t < frames; ++t) {
        for (int chroma = 0; chroma < Q && static_cast<std::size_t>(chroma) < bins;
             ++chroma) {
            std::vector<cplx> oct;
            for (std::size_t f = static_cast<std::size_t>(chroma); f < bins;
                 f += static_cast<std::size_t>(Q))
                oct.push_back(field[t * bins + f]);
            auto conv = conv_same(oct, fm.taps, fm.taps_center);
            std::size_t j = 0;
            for (std::size_t f = static_cast<std::size_t>(chroma); f < bins;
                 f += static_cast<std::size_t>(Q))
                out[t * bins + f] = conv[j++];
        }
    }
    return out;
}

}  // namespace detail

namespace {

bool member_order(const FilterMember& a, const FilterMember& b) {
    auto rank = [](int s) { return s; };  // -1 < 0 < +1
    if (rank(a.sign) != rank(b.sign)) return rank(a.sign) < rank(b.sign);
    return a.center < b.center;  // log|c| ascending; lowpass is alone in its rank
}

std::vector<std::size_t> ordered_indices(const WaveletFilterbank& bank) {
    std::vector<std::size_t> idx(bank.members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return member_order(bank.members[i], bank.members[j]);
    });
    return idx;
}

void smooth_time(ScatteringTensor& tensor, const LowpassWindow& lowpass) {
    const int n = static_cast<int>(tensor.frames);
    const int k = static_cast<int>(lowpass.taps.size());
    const std::size_t stride = tensor.bins * tensor.channels();
    std::vector<double> row(tensor.frames);
    for (std::size_t c = 0; c < stride; ++c) {
        for (std::size_t t = 0; t < tensor.frames; ++t)
            row[t] = tensor.values[t * stride + c];
        for (int t = 0; t < n; ++t) {
            double acc = 0.0;
            for (int m = 0; m < k; ++m) {
                int j = t - (m - lowpass.center);
                while (j < 0 || j >= n) {
                    if (j < 0) j = -j;
                    if (j >= n) j = 2 * (n - 1) - j;
                }
                acc += lowpass.taps[static_cast<std::size_t>(m)] *
                       row[static_cast<std::size_t>(j)];
            }
            tensor.values[static_cast<std::size_t>(t) * stride + c] = acc;
        }
    }
    tensor.averaging_T = lowpass.T;
}

ScatteringTensor make_tensor(const Scalogram& x1, ScatteringMode mode,
                             std::size_t channels) {
    ScatteringTensor out;
    out.frames = x1.frames;
    out.bins = x1.bins;
    out.mode = mode;
    out.hop = x1.hop;
    out.sample_rate = x1.sample_rate;
    out.freq_axis = x1.freq_axis;
    out.lambda2_axis.reserve(channels);
    return out;
}

/// Alpha members below the frame-rate Nyquist, in ascending center order;
/// others recorded as skipped.
std::vector<std::size_t> usable_alpha(const Scalogram& x1,
                                      const WaveletFilterbank& alpha_bank,
                                      std::vector<std::string>& warnings) {
    const double nyq = x1.frame_rate() / 2.0;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < alpha_bank.members.size(); ++i) {
        if (alpha_bank.members[i].center < nyq) {
            idx.push_back(i);
        } else {
            warnings.push_back("alpha member at " +
                               std::to_string(alpha_bank.members[i].center) +
                               " Hz above the frame-rate Nyquist; skipped");
        }
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return alpha_bank.members[a].center < alpha_bank.members[b].center;
    });
    return idx;
}

}  // namespace

ScatteringTensor time_scattering(const Scalogram& x1,
                                 const WaveletFilterbank& alpha_bank,
                                 const LowpassWindow* lowpass) {
    ScatteringTensor out = make_tensor(x1, ScatteringMode::time, 0);
    const auto alphas = usable_alpha(x1, alpha_bank, out.warnings);
    for (std::size_t a : alphas)
        out.lambda2_axis.push_back({alpha_bank.members[a].center, 0.0, 0.0});
    out.values.assign(out.frames * out.bins * out.channels(), 0.0);

    for (std::size_t ci = 0; ci < alphas.size(); ++ci) {
        const auto field = detail::alpha_stage(x1, alpha_bank, alphas[ci]);
        for (std::size_t t = 0; t < out.frames; ++t)
            for (std::size_t f = 0; f < out.bins; ++f)
                out.at(t, f, ci) = std::abs(field[t * out.bins + f]);
    }
    if (lowpass) smooth_time(out, *lowpass);
    return out;
}

ScatteringTensor joint_scattering(const Scalogram& x1,
                                  const WaveletFilterbank& alpha_bank,
                                  const WaveletFilterbank& beta_bank,
                                  const LowpassWindow* lowpass) {
    ScatteringTensor out = make_tensor(x1, ScatteringMode::joint, 0);
    const auto alphas = usable_alpha(x1, alpha_bank, out.warnings);
    const auto betas = ordered_indices(beta_bank);
    for (std::size_t a : alphas)
        for (std::size_t b : betas)
            out.lambda2_axis.push_back({alpha_bank.members[a].center,
                                        beta_bank.members[b].signed_center(), 0.0});
    out.values.assign(out.frames * out.bins * out.channels(), 0.0);

    std::size_t ci = 0;
    for (std::size_t a : alphas) {
        const auto field = detail::alpha_stage(x1, alpha_bank, a);
        for (std::size_t b : betas) {
            const auto bf =
                detail::beta_stage(field, out.frames, out.bins, beta_bank, b);
            for (std::size_t t = 0; t < out.frames; ++t)
                for (std::size_t f = 0; f < out.bins; ++f)
                    out.at(t, f, ci) = std::abs(bf[t * out.bins + f]);
            ++ci;
        }
    }
    if (lowpass) smooth_time(out, *lowpass);
    return out;
}

ScatteringTensor spiral_scattering(const Scalogram& x1,
                                   const WaveletFilterbank& alpha_bank,
                                   const WaveletFilterbank& beta_bank,
                                   const WaveletFilterbank& gamma_bank,
                                   const LowpassWindow* lowpass) {
    if (x1.Q < 1 || x1.bins < 2 * static_cast<std::size_t>(x1.Q))
        throw invalid_parameter(
            "spiral_scattering: scalogram must span at least 2 octaves");

    ScatteringTensor out = make_tensor(x1, ScatteringMode::spiral, 0);
    const auto alphas = usable_alpha(x1, alpha_bank, out.warnings);
    const auto betas = ordered_indices(beta_bank);
    const auto gammas = ordered_indices(gamma_bank);
    for (std::size_t a : alphas)
        for (std::size_t b : betas)
            for (std::size_t g : gammas)
                out.lambda2_axis.push_back(
                    {alpha_bank.members[a].center,
                     beta_bank.members[b].signed_center(),
                     gamma_bank.members[g].signed_center()});
    out.values.assign(out.frames * out.bins * out.channels(), 0.0);

    std::size_t ci = 0;
    for (std::size_t a : alphas) {
        const auto field = detail::alpha_stage(x1, alpha_bank, a);
        for (std::size_t b : betas) {
            const auto bf =
                detail::beta_stage(field, out.frames, out.bins, beta_bank, b);
            for (std::size_t g : gammas) {
                const auto gf = detail::gamma_stage(bf, out.frames, out.bins,
                                                    x1.Q, gamma_bank, g);
                for (std::size_t t = 0; t < out.frames; ++t)
                    for (std::size_t f = 0; f < out.bins; ++f)
                        out.at(t, f, ci) = std::abs(gf[t * out.bins + f]);
                ++ci;
            }
        }
    }
    if (lowpass) smooth_time(out, *lowpass);
    return out;
}

}  // namespace scat
