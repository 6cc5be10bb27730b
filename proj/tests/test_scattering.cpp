// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scat/filterbank.hpp"
#include "scat/scalogram.hpp"
#include "scat/scattering.hpp"

using namespace scat;

namespace {

struct Fixture {
    WaveletFilterbank first_order;
    SpiralBanks banks;
    double sr = 16000.0;
    int hop = 64;

    Fixture() {
        first_order =
            build_first_order_bank(design_mother_wavelet(12.0), 12, 6, sr, 32768);
        SpiralBankParams p;
        p.alpha_lo = 1.0;
        p.alpha_hi = 16.0;
        p.frame_rate = sr / hop;
        p.bins_per_octave = 12;
        p.octave_count = 6;
        banks = build_spiral_banks(p);
    }

    Scalogram tone(double freq, double dur = 1.0) const {
        Signal x;
        x.sample_rate = sr;
        x.samples.resize(static_cast<std::size_t>(dur * sr));
        for (std::size_t n = 0; n < x.samples.size(); ++n)
            x.samples[n] =
                static_cast<float>(std::cos(2.0 * std::numbers::pi * freq * n / sr));
        return compute_scalogram(x, first_order, hop);
    }

    Scalogram tremolo(double freq, double fm, double depth, double dur = 1.0) const {
        Signal x;
        x.sample_rate = sr;
        x.samples.resize(static_cast<std::size_t>(dur * sr));
        for (std::size_t n = 0; n < x.samples.size(); ++n) {
            const double t = n / sr;
            x.samples[n] = static_cast<float>(
                (1.0 + depth * std::cos(2.0 * std::numbers::pi * fm * t)) *
                std::cos(2.0 * std::numbers::pi * freq * t));
        }
        return compute_scalogram(x, first_order, hop);
    }

    Scalogram glissando(double f0, double oct_per_s, double dur = 1.0) const {
        Signal x;
        x.sample_rate = sr;
        x.samples.resize(static_cast<std::size_t>(dur * sr));
        const double v = oct_per_s * std::numbers::ln2;
        for (std::size_t n = 0; n < x.samples.size(); ++n) {
            const double t = n / sr;
            const double phase = f0 * std::expm1(v * t) / v;
            x.samples[n] =
                static_cast<float>(std::cos(2.0 * std::numbers::pi * phase));
        }
        return compute_scalogram(x, first_order, hop);
    }
};

}  // namespace

TEST_CASE("tensor shapes and channel axes") {
    Fixture fx;
    const auto x1 = fx.tone(512.0, 0.5);
    const auto st = time_scattering(x1, fx.banks.alpha);
    CHECK(st.mode == ScatteringMode::time);
    CHECK(st.frames == x1.frames);
    CHECK(st.bins == x1.bins);
    CHECK(st.channels() == fx.banks.alpha.members.size());
    for (const auto& l : st.lambda2_axis) {
        CHECK(l.beta == 0.0);
        CHECK(l.gamma == 0.0);
        CHECK(l.alpha > 0.0);
    }

    const auto sj = joint_scattering(x1, fx.banks.alpha, fx.banks.beta);
    CHECK(sj.channels() ==
          fx.banks.alpha.members.size() * fx.banks.beta.members.size());

    const auto ss = spiral_scattering(x1, fx.banks.alpha, fx.banks.beta,
                                      fx.banks.gamma);
    CHECK(ss.channels() == fx.banks.alpha.members.size() *
                               fx.banks.beta.members.size() *
                               fx.banks.gamma.members.size());
    for (double v : ss.values) CHECK(v >= 0.0);
}

TEST_CASE("spiral with identity gamma matches joint bit-for-bit") {
    Fixture fx;
    const auto x1 = fx.tremolo(512.0, 4.0, 0.5, 0.5);
    const auto identity = make_identity_bank(BankKind::gamma_octave, 1.0);
    const auto sj = joint_scattering(x1, fx.banks.alpha, fx.banks.beta);
    const auto ss =
        spiral_scattering(x1, fx.banks.alpha, fx.banks.beta, identity);
    REQUIRE(ss.values.size() == sj.values.size());
    for (std::size_t i = 0; i < ss.values.size(); ++i)
        CHECK(ss.values[i] == sj.values[i]);
}

TEST_CASE("joint with identity beta matches time scattering bit-for-bit") {
    Fixture fx;
    const auto x1 = fx.tremolo(512.0, 4.0, 0.5, 0.5);
    const auto identity = make_identity_bank(BankKind::beta_logfreq, 1.0);
    const auto st = time_scattering(x1, fx.banks.alpha);
    const auto sj = joint_scattering(x1, fx.banks.alpha, identity);
    REQUIRE(sj.values.size() == st.values.size());
    for (std::size_t i = 0; i < sj.values.size(); ++i)
        CHECK(sj.values[i] == st.values[i]);
}

TEST_CASE("time stage commutes with the bin-axis stages") {
    Fixture fx;
    const auto x1 = fx.glissando(256.0, 1.0, 0.5);
    const double fr = x1.frame_rate();
    std::vector<cplx> base(x1.frames * x1.bins);
    for (std::size_t t = 0; t < x1.frames; ++t)
        for (std::size_t f = 0; f < x1.bins; ++f)
            base[t * x1.bins + f] = cplx(x1.at(t, f), 0.0);

    for (std::size_t am : {std::size_t(0), std::size_t(2)}) {
        for (std::size_t bm : {std::size_t(0), std::size_t(3)}) {
            for (std::size_t gm : {std::size_t(0), std::size_t(2)}) {
                auto binwise = [&](const std::vector<cplx>& in) {
                    auto b = detail::beta_stage(in, x1.frames, x1.bins,
                                                fx.banks.beta, bm);
                    return detail::gamma_stage(b, x1.frames, x1.bins, x1.Q,
                                               fx.banks.gamma, gm);
                };
                const auto ab = binwise(detail::alpha_stage(
                    base, x1.frames, x1.bins, fr, fx.banks.alpha, am));
                const auto ba = detail::alpha_stage(
                    binwise(base), x1.frames, x1.bins, fr, fx.banks.alpha, am);
                double worst = 0.0, scale = 0.0;
                for (std::size_t i = 0; i < ab.size(); ++i) {
                    worst = std::max(worst, std::abs(ab[i] - ba[i]));
                    scale = std::max(scale, std::abs(ab[i]));
                }
                CHECK(worst <= 1e-9 * std::max(scale, 1.0));
            }
        }
    }
}

TEST_CASE("stationary tone: bandpass channels are null next to lowpass") {
    Fixture fx;
    const auto x1 = fx.tone(512.0);
    const auto ss = spiral_scattering(x1, fx.banks.alpha, fx.banks.beta,
                                      fx.banks.gamma);
    // A steady tone has no spectrotemporal modulation: every channel with a
    // bandpass beta or gamma must carry (almost) nothing relative to the
    // lowpass-lowpass channel at the same alpha.
    const std::size_t mid_t = ss.frames / 2;
    for (std::size_t a = 0; a < fx.banks.alpha.members.size(); ++a) {
        double lowlow = 0.0, band = 0.0;
        for (std::size_t l = 0; l < ss.channels(); ++l) {
            if (std::abs(ss.lambda2_axis[l].alpha -
                         fx.banks.alpha.members[a].center) > 1e-9)
                continue;
            double e = 0.0;
            for (std::size_t b = 0; b < ss.bins; ++b)
                e += ss.at(mid_t, b, l) * ss.at(mid_t, b, l);
            if (ss.lambda2_axis[l].beta == 0.0 && ss.lambda2_axis[l].gamma == 0.0)
                lowlow += e;
            else
                band = std::max(band, e);
        }
        // The alpha stage already suppresses a stationary tone, so compare
        // against the scalogram energy itself for a meaningful scale.
        double x1_energy = 0.0;
        for (std::size_t b = 0; b < x1.bins; ++b)
            x1_energy += x1.at(mid_t, b) * x1.at(mid_t, b);
        CHECK(band <= 1e-4 * x1_energy);
        (void)lowlow;
    }
}

TEST_CASE("tremolo concentrates at beta = 0 and matching alpha") {
    Fixture fx;
    const auto x1 = fx.tremolo(512.0, 4.0, 0.8);
    const auto sj = joint_scattering(x1, fx.banks.alpha, fx.banks.beta);
    const std::size_t mid_t = sj.frames / 2;
    double best = -1.0;
    SpiralIndex arg;
    for (std::size_t l = 0; l < sj.channels(); ++l) {
        double e = 0.0;
        for (std::size_t b = 0; b < sj.bins; ++b) e += sj.at(mid_t, b, l);
        if (e > best) best = e, arg = sj.lambda2_axis[l];
    }
    CHECK(arg.alpha == doctest::Approx(4.0));
    CHECK(arg.beta == 0.0);
}

TEST_CASE("quadrant law: glissando sign picks the beta sign") {
    Fixture fx;
    // Upward glissando: frequency rises, so the ridge tilts with negative
    // slope in (time, log-frequency) for analytic beta wavelets of
    // negative sign paired with positive alpha drift, and vice versa for
    // a downward glissando. The argmax beta signs must be opposite.
    const auto up = fx.glissando(256.0, 2.0);
    const auto down = fx.glissando(1024.0, -2.0);

    auto argmax_sign = [&](const Scalogram& x1) {
        const auto sj = joint_scattering(x1, fx.banks.alpha, fx.banks.beta);
        const std::size_t mid_t = sj.frames / 2;
        double best = -1.0;
        double sign = 0.0;
        for (std::size_t l = 0; l < sj.channels(); ++l) {
            if (sj.lambda2_axis[l].beta == 0.0) continue;  // compare branches
            double e = 0.0;
            for (std::size_t b = 0; b < sj.bins; ++b) e += sj.at(mid_t, b, l);
            if (e > best) {
                best = e;
                sign = sj.lambda2_axis[l].beta > 0 ? 1.0 : -1.0;
            }
        }
        return sign;
    };

    const double s_up = argmax_sign(up);
    const double s_down = argmax_sign(down);
    CHECK(s_up != 0.0);
    CHECK(s_down != 0.0);
    CHECK(s_up == -s_down);
}

TEST_CASE("time averaging: lowpass smooths and is recorded in the tensor") {
    Fixture fx;
    const auto x1 = fx.tremolo(512.0, 4.0, 0.8);
    const auto lp = make_lowpass_window(0.25, fx.sr / fx.hop);
    const auto raw = time_scattering(x1, fx.banks.alpha);
    const auto avg = time_scattering(x1, fx.banks.alpha, &lp);
    CHECK(avg.averaging_T == doctest::Approx(0.25));
    CHECK(raw.averaging_T == 0.0);
    REQUIRE(avg.values.size() == raw.values.size());

    // Smoothed output varies less across frames than the raw modulus.
    auto variation = [&](const ScatteringTensor& s) {
        double v = 0.0;
        for (std::size_t t = 1; t < s.frames; ++t)
            for (std::size_t b = 0; b < s.bins; ++b)
                for (std::size_t l = 0; l < s.channels(); ++l)
                    v += std::abs(s.at(t, b, l) - s.at(t - 1, b, l));
        return v;
    };
    CHECK(variation(avg) < 0.5 * variation(raw));
}

TEST_CASE("shift stability of averaged spiral coefficients") {
    Fixture fx;
    const double T = 0.2048;  // T/16 = 12.8 ms = 3.2 hops; round to frames
    const std::size_t shift_frames = 3;
    const std::size_t tau = shift_frames * static_cast<std::size_t>(fx.hop);

    Signal x;
    x.sample_rate = fx.sr;
    x.samples.assign(16000, 0.0f);
    for (std::size_t n = 0; n < x.samples.size(); ++n) {
        const double t = n / fx.sr;
        x.samples[n] = static_cast<float>(
            (1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * 6.0 * t)) *
            std::cos(2.0 * std::numbers::pi * 512.0 * t));
    }
    Signal y;
    y.sample_rate = fx.sr;
    y.samples.assign(x.samples.size(), 0.0f);
    for (std::size_t n = 0; n + tau < x.samples.size(); ++n)
        y.samples[n + tau] = x.samples[n];

    const auto lp = make_lowpass_window(T, fx.sr / fx.hop);
    const auto sx = spiral_scattering(compute_scalogram(x, fx.first_order, fx.hop),
                                      fx.banks.alpha, fx.banks.beta,
                                      fx.banks.gamma, &lp);
    const auto sy = spiral_scattering(compute_scalogram(y, fx.first_order, fx.hop),
                                      fx.banks.alpha, fx.banks.beta,
                                      fx.banks.gamma, &lp);

    // No realignment: averaging over T must make a shift by T/16 almost
    // invisible away from the signal edges.
    const std::size_t guard = 80;
    double num = 0.0, den = 0.0;
    for (std::size_t t = guard; t + shift_frames + guard < sx.frames; ++t)
        for (std::size_t b = 0; b < sx.bins; ++b)
            for (std::size_t l = 0; l < sx.channels(); ++l) {
                const double d = sx.at(t, b, l) - sy.at(t, b, l);
                num += d * d;
                den += sx.at(t, b, l) * sx.at(t, b, l);
            }
    CHECK(std::sqrt(num / den) <= 0.05);
}

TEST_CASE("alpha members above the frame Nyquist are skipped with a warning") {
    Fixture fx;
    SpiralBankParams p;
    p.alpha_lo = 1.0;
    p.alpha_hi = 256.0;  // exceeds frame rate 250 / 2
    p.frame_rate = fx.sr / fx.hop;
    p.octave_count = 6;
    const auto wide = build_spiral_banks(p);
    const auto x1 = fx.tone(512.0, 0.3);
    const auto st = time_scattering(x1, wide.alpha);
    CHECK(st.channels() < wide.alpha.members.size());
    CHECK(!st.warnings.empty());
    for (const auto& l : st.lambda2_axis)
        CHECK(l.alpha < p.frame_rate / 2.0);
}

TEST_CASE("spiral scattering needs at least two octaves of bins") {
    Fixture fx;
    Scalogram tiny = fx.tone(512.0, 0.2);
    tiny.bins = 12;  // a single octave
    tiny.values.resize(tiny.frames * tiny.bins);
    tiny.freq_axis.resize(tiny.bins);
    tiny.labels.resize(tiny.bins);
    CHECK_THROWS_AS(spiral_scattering(tiny, fx.banks.alpha, fx.banks.beta,
                                      fx.banks.gamma),
                    invalid_parameter);
}
