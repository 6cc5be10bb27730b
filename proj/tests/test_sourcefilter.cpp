// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scat/filterbank.hpp"
#include "scat/scattering.hpp"
#include "scat/sourcefilter.hpp"

using namespace scat;

namespace {

// Central finite differences as an independent check of the closed-form
// warp derivatives.
double fd1(const WarpSpec& w, double t, double h = 1e-5) {
    return (w.value(t + h) - w.value(t - h)) / (2.0 * h);
}
double fd2(const WarpSpec& w, double t, double h = 1e-4) {
    return (w.value(t + h) - 2.0 * w.value(t) + w.value(t - h)) / (h * h);
}

}  // namespace

TEST_CASE("warp families match finite differences") {
    const double t = 0.37;
    for (const WarpSpec& w :
         {WarpSpec::identity(), WarpSpec::linear(1.8),
          WarpSpec::exponential(220.0, 0.5),
          WarpSpec::exponential(110.0, -0.25)}) {
        CHECK(w.d1(t) == doctest::Approx(fd1(w, t)).epsilon(1e-6));
        CHECK(w.d2(t) == doctest::Approx(fd2(w, t)).epsilon(1e-4));
    }
}

TEST_CASE("exponential warp has constant octave velocity") {
    const auto w = WarpSpec::exponential(220.0, 0.5);
    CHECK(w.value(0.0) == doctest::Approx(0.0));
    CHECK(w.d1(0.0) == doctest::Approx(220.0));
    CHECK(w.d1(2.0) == doctest::Approx(220.0 * 2.0));  // one octave in 2 s
    for (double t : {0.0, 0.5, 1.3})
        CHECK(w.octave_velocity(t) == doctest::Approx(0.5).epsilon(1e-12));
    // d2/d1 = v ln2 exactly, so the averaged-coefficient correction
    // (d3 d1 - d2^2) vanishes.
    for (double t : {0.1, 0.9})
        CHECK(w.d3(t) * w.d1(t) - w.d2(t) * w.d2(t) ==
              doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("identity and linear warps have zero octave velocity") {
    CHECK(WarpSpec::identity().octave_velocity(1.0) == 0.0);
    CHECK(WarpSpec::linear(3.0).octave_velocity(1.0) == 0.0);
    CHECK(WarpSpec::linear(3.0).d1(0.2) == doctest::Approx(3.0));
}

TEST_CASE("warp validation rejects non-increasing phase") {
    CHECK_THROWS_AS(WarpSpec::linear(-1.0).validate(0.0, 1.0),
                    invalid_parameter);
    CHECK_THROWS_AS(WarpSpec::exponential(0.0, 0.5).validate(0.0, 1.0),
                    invalid_parameter);
    CHECK_NOTHROW(WarpSpec::exponential(220.0, -0.5).validate(0.0, 1.0));
}

TEST_CASE("synthesis renders the expected partials") {
    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::linear(200.0);
    spec.filter_warp = WarpSpec::linear(1.0);
    spec.envelope.cutoff_hz = 2000.0;
    spec.partial_count = 4;
    const double sr = 16000.0;
    const auto x = synthesize(spec, 1.0, sr);
    REQUIRE(x.samples.size() == 16000);

    // Goertzel-style projection on each partial of a stationary render.
    for (int p = 1; p <= 4; ++p) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < x.samples.size(); ++n) {
            const double ph = 2.0 * std::numbers::pi * 200.0 * p * n / sr;
            re += x.samples[n] * std::cos(ph);
            im += x.samples[n] * std::sin(ph);
        }
        const double amp =
            2.0 * std::hypot(re, im) / static_cast<double>(x.samples.size());
        const double expected = spec.envelope.amplitude(200.0 * p);
        CHECK(amp == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("synthesis drops partials that cross Nyquist and warns") {
    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::exponential(1000.0, 1.0);  // ends at 2 kHz
    spec.filter_warp = WarpSpec::identity();
    spec.envelope.cutoff_hz = 8000.0;
    spec.partial_count = 8;  // top partial sweeps to 16 kHz > 4 kHz Nyquist
    std::vector<std::string> warnings;
    const auto x = synthesize(spec, 1.0, 8000.0, &warnings);
    CHECK(!warnings.empty());
    // Energy still present from the surviving partials.
    double e = 0.0;
    for (float v : x.samples) e += static_cast<double>(v) * v;
    CHECK(e > 0.0);
}

TEST_CASE("synthesis is deterministic for a fixed phase seed") {
    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::exponential(220.0, 0.5);
    spec.filter_warp = WarpSpec::exponential(1.0, -0.25);
    spec.envelope.cutoff_hz = 1500.0;
    spec.partial_count = 6;
    spec.phase_seed = 42;
    const auto a = synthesize(spec, 0.5, 16000.0);
    const auto b = synthesize(spec, 0.5, 16000.0);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i] == b.samples[i]);
    spec.phase_seed = 43;
    const auto c = synthesize(spec, 0.5, 16000.0);
    bool differs = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i] != c.samples[i]) differs = true;
    CHECK(differs);
}

TEST_CASE("assumption report flags fast deformations") {
    const auto bank =
        build_first_order_bank(design_mother_wavelet(12.0), 12, 6, 16000.0,
                               32768);
    SourceFilterSpec slow;
    slow.source_warp = WarpSpec::exponential(220.0, 0.1);
    slow.filter_warp = WarpSpec::exponential(1.0, -0.05);
    slow.envelope.cutoff_hz = 2000.0;
    slow.partial_count = 4;
    const auto ok = check_assumptions(slow, bank, 2, 0.5);
    CHECK(ok.ratio_a == doctest::Approx(4.0 / 12.0));
    CHECK(ok.all_ok());

    // At t = 0 the drift-to-bandwidth ratio is 40 ln2 * Q / (2 * 220),
    // far beyond the 0.1 bound.
    SourceFilterSpec fast = slow;
    fast.source_warp = WarpSpec::exponential(220.0, 40.0);
    const auto bad = check_assumptions(fast, bank, 2, 0.0);
    CHECK(!bad.b_ok);

    SourceFilterSpec crowded = slow;
    crowded.partial_count = 8;
    const auto h = check_assumptions(crowded, bank, 8, 0.5);
    CHECK(h.ratio_a > 1.0);
    CHECK(!h.a_ok);
}

TEST_CASE("predicted plane reads the warp velocities") {
    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::exponential(220.0, 0.5);
    spec.filter_warp = WarpSpec::exponential(1.0, -0.25);
    const auto plane = predicted_plane(spec, 0.7);
    CHECK(plane.v_theta == doctest::Approx(0.5));
    CHECK(plane.v_eta == doctest::Approx(-0.25));
    CHECK(plane.t == doctest::Approx(0.7));
}

TEST_CASE("ridge-plane fit recovers a synthetic plane") {
    // Build a tensor whose channel magnitudes follow a Gaussian ridge
    // around the plane alpha + v_theta beta + v_eta gamma = 0.
    const double v_theta = 2.0, v_eta = -1.0;
    ScatteringTensor tensor;
    tensor.mode = ScatteringMode::spiral;
    tensor.frames = 1;
    tensor.bins = 1;
    for (double a : {1.0, 2.0, 4.0, 8.0})
        for (double b : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0})
            for (double g : {-0.5, -0.25, 0.0, 0.25, 0.5})
                tensor.lambda2_axis.push_back({a, b, g});
    tensor.values.resize(tensor.lambda2_axis.size());
    for (std::size_t l = 0; l < tensor.lambda2_axis.size(); ++l) {
        const auto& ch = tensor.lambda2_axis[l];
        const double r = ch.alpha + v_theta * ch.beta + v_eta * ch.gamma;
        tensor.values[l] = std::exp(-r * r / 2.0);
    }
    const auto fit = fit_ridge_plane(tensor, 0, 0, 0.2);
    CHECK(fit.plane.v_theta == doctest::Approx(v_theta).epsilon(0.15));
    CHECK(fit.plane.v_eta == doctest::Approx(v_eta).epsilon(0.25));
    CHECK(fit.selected >= 3);
}

TEST_CASE("ridge-plane fit rejects degenerate support") {
    ScatteringTensor tensor;
    tensor.mode = ScatteringMode::spiral;
    tensor.frames = 1;
    tensor.bins = 1;
    // All energy in one channel: nothing to fit a plane through.
    tensor.lambda2_axis = {{1.0, 0.5, 0.25}, {2.0, 0.5, 0.25}, {4.0, 0.5, 0.25}};
    tensor.values = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(fit_ridge_plane(tensor, 0, 0, 0.5), degenerate_fit);
}

TEST_CASE("closed form factors are finite and positive on a valid scene") {
    const double sr = 16000.0;
    const int hop = 64;
    const auto first =
        build_first_order_bank(design_mother_wavelet(12.0), 12, 6, sr, 32768);
    SpiralBankParams p;
    p.frame_rate = sr / hop;
    p.octave_count = 6;
    const auto banks = build_spiral_banks(p);

    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::exponential(220.0, 0.5);
    spec.filter_warp = WarpSpec::exponential(1.0, -0.25);
    spec.envelope.cutoff_hz = 1500.0;
    spec.partial_count = 4;

    // lambda1 near the third partial at t = 0.5: 3 * 220 * 2^0.25.
    const double target = 3.0 * 220.0 * std::exp2(0.25);
    std::size_t bin = 0;
    for (std::size_t i = 0; i < first.members.size(); ++i)
        if (std::abs(first.members[i].center - target) <
            std::abs(first.members[bin].center - target))
            bin = i;

    const SpiralIndex l2{2.0, 1.0, -0.25};
    const auto r = closed_form_x2(spec, first, banks.alpha, banks.beta,
                                  banks.gamma, bin, l2, 0.5);
    CHECK(std::isfinite(r.value));
    CHECK(r.value >= 0.0);
    CHECK(r.factor_source > 0.0);
    CHECK(r.factor_filter > 0.0);
    CHECK(r.factor_alpha >= 0.0);
}
