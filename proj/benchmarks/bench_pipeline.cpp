// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "scat/filterbank.hpp"
#include "scat/scalogram.hpp"
#include "scat/scattering.hpp"
#include "scat/sourcefilter.hpp"

using namespace scat;

namespace {

Signal make_input(double seconds, double sr) {
    SourceFilterSpec spec;
    spec.source_warp = WarpSpec::exponential(220.0, 0.5);
    spec.filter_warp = WarpSpec::exponential(1.0, -0.25);
    spec.envelope.cutoff_hz = 1500.0;
    spec.partial_count = 16;
    return synthesize(spec, seconds, sr);
}

void bench_scalogram(benchmark::State& state) {
    const double sr = 22050.0;
    const double seconds = static_cast<double>(state.range(0));
    const auto x = make_input(seconds, sr);
    const auto bank =
        build_first_order_bank(design_mother_wavelet(12.0), 12, 8, sr, 65536);
    for (auto _ : state) {
        auto x1 = compute_scalogram(x, bank, 256);
        benchmark::DoNotOptimize(x1.values.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(x.samples.size()));
}

void bench_spiral(benchmark::State& state) {
    const double sr = 22050.0;
    const double seconds = static_cast<double>(state.range(0));
    const auto x = make_input(seconds, sr);
    const auto bank =
        build_first_order_bank(design_mother_wavelet(12.0), 12, 8, sr, 65536);
    const auto x1 = compute_scalogram(x, bank, 256);
    SpiralBankParams p;
    p.frame_rate = sr / 256;
    p.octave_count = 8;
    const auto banks = build_spiral_banks(p);
    for (auto _ : state) {
        auto x2 =
            spiral_scattering(x1, banks.alpha, banks.beta, banks.gamma);
        benchmark::DoNotOptimize(x2.values.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(x1.values.size()));
}

void bench_averaged_spiral(benchmark::State& state) {
    const double sr = 22050.0;
    const auto x = make_input(3.0, sr);
    const auto bank =
        build_first_order_bank(design_mother_wavelet(12.0), 12, 8, sr, 65536);
    const auto x1 = compute_scalogram(x, bank, 256);
    SpiralBankParams p;
    p.frame_rate = sr / 256;
    p.octave_count = 8;
    const auto banks = build_spiral_banks(p);
    const auto lp = make_lowpass_window(0.5, sr / 256);
    for (auto _ : state) {
        auto s2 = spiral_scattering(x1, banks.alpha, banks.beta, banks.gamma,
                                    &lp);
        benchmark::DoNotOptimize(s2.values.data());
    }
}

void bench_ridge_fit(benchmark::State& state) {
    const double sr = 22050.0;
    const auto x = make_input(3.0, sr);
    const auto bank =
        build_first_order_bank(design_mother_wavelet(16.0), 16, 7, sr, 65536);
    const auto x1 = compute_scalogram(x, bank, 256);
    SpiralBankParams p;
    p.alpha_lo = 0.5;
    p.alpha_hi = 4.0;
    p.beta_max = 4.0;
    p.bins_per_octave = 16;
    p.octave_count = 7;
    p.frame_rate = sr / 256;
    const auto banks = build_spiral_banks(p);
    const auto x2 =
        spiral_scattering(x1, banks.alpha, banks.beta, banks.gamma);
    // Fit at the third partial one second in; power-of-two partials share a
    // chroma column and make the plane fit degenerate.
    const std::size_t t = static_cast<std::size_t>(
        std::lround(1.0 * x2.sample_rate / x2.hop));
    const double target = 3.0 * 220.0 * std::pow(2.0, 0.5);
    std::size_t bin = 0;
    for (std::size_t i = 0; i < x2.freq_axis.size(); ++i)
        if (std::abs(std::log2(x2.freq_axis[i] / target)) <
            std::abs(std::log2(x2.freq_axis[bin] / target)))
            bin = i;
    for (auto _ : state) {
        auto fit = fit_ridge_plane(x2, t, bin, 0.6);
        benchmark::DoNotOptimize(fit.plane.v_theta);
    }
}

BENCHMARK(bench_scalogram)->Arg(1)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_spiral)->Arg(1)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_averaged_spiral)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_ridge_fit)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
