// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scat/filterbank.hpp"
#include "scat/io.hpp"
#include "scat/scalogram.hpp"
#include "scat/scattering.hpp"
#include "scat/sourcefilter.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw scat::io_error("cannot open config " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw scat::invalid_parameter("config " + path + ": " + e.what());
    }
    return cfg;
}

/// Config-file values fill in options the user did not pass on the
/// command line; explicit flags always win.
template <typename T>
void from_cfg(const json& cfg, const char* key, const CLI::Option* opt, T& var) {
    if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

scat::WarpSpec warp_from(const std::string& family, double rate,
                         double base_rate, double velocity) {
    if (family == "identity") return scat::WarpSpec::identity();
    if (family == "linear") return scat::WarpSpec::linear(rate);
    if (family == "exponential")
        return scat::WarpSpec::exponential(base_rate, velocity);
    throw scat::invalid_parameter("unknown warp family '" + family +
                                  "' (identity, linear, exponential)");
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string input;
    std::string config;
    std::string out_dir = "out";
    std::string mode = "spiral";
    int q1 = 12;
    int q2 = 1;
    int j = 8;
    double T = 0.5;
    int hop = 256;
    double alpha_lo = 0.5, alpha_hi = 8.0;
    double beta_max = 2.0, gamma_max = 0.5;
};

int run_analyze(const AnalyzeArgs& a) {
    std::vector<std::string> warnings;
    const scat::Signal x = scat::read_wav(a.input, &warnings);
    print_warnings(warnings);

    const auto mother = scat::design_mother_wavelet(a.q1);
    const auto bank = scat::build_first_order_bank(mother, a.q1, a.j,
                                                   x.sample_rate, 65536);
    const auto x1 = scat::compute_scalogram(x, bank, a.hop);
    print_warnings(x1.warnings);

    const double frame_rate = x.sample_rate / a.hop;
    const auto lowpass = scat::make_lowpass_window(a.T, frame_rate);
    const auto s1 = scat::average_time(x1, lowpass);

    scat::SpiralBankParams p;
    p.alpha_lo = a.alpha_lo;
    p.alpha_hi = a.alpha_hi;
    p.beta_max = a.beta_max;
    p.gamma_max = a.gamma_max;
    p.q2 = a.q2;
    p.bins_per_octave = a.q1;
    p.octave_count = a.j;
    p.frame_rate = frame_rate;
    const auto banks = scat::build_spiral_banks(p);

    scat::ScatteringTensor x2;
    if (a.mode == "time") {
        x2 = scat::time_scattering(x1, banks.alpha, &lowpass);
    } else if (a.mode == "joint") {
        x2 = scat::joint_scattering(x1, banks.alpha, banks.beta, &lowpass);
    } else if (a.mode == "spiral") {
        x2 = scat::spiral_scattering(x1, banks.alpha, banks.beta, banks.gamma,
                                     &lowpass);
    } else {
        throw scat::invalid_parameter("unknown mode '" + a.mode +
                                      "' (time, joint, spiral)");
    }
    print_warnings(x2.warnings);

    std::filesystem::create_directories(a.out_dir);
    const auto dir = std::filesystem::path(a.out_dir);
    scat::export_scalogram((dir / "x1.f32").string(), x1);
    scat::export_averaged((dir / "s1.f32").string(), s1);
    scat::export_tensor((dir / "x2.f32").string(), x2);
    std::ofstream fb(dir / "filterbank.json");
    if (!fb) throw scat::io_error("cannot write filterbank.json");
    fb << scat::filterbank_to_json(bank, a.T).dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
    std::string output;
    std::string config;
    double duration = 2.0;
    double sample_rate = 22050.0;
    std::string source_family = "exponential";
    double source_rate = 1.0, source_base = 220.0, source_velocity = 0.0;
    std::string filter_family = "identity";
    double filter_rate = 1.0, filter_base = 1.0, filter_velocity = 0.0;
    double cutoff_hz = 1500.0;
    int partials = 8;
    unsigned phase_seed = 0;
};

scat::SourceFilterSpec spec_from(const SynthArgs& a) {
    scat::SourceFilterSpec spec;
    spec.source_warp = warp_from(a.source_family, a.source_rate, a.source_base,
                                 a.source_velocity);
    spec.filter_warp = warp_from(a.filter_family, a.filter_rate, a.filter_base,
                                 a.filter_velocity);
    spec.envelope.cutoff_hz = a.cutoff_hz;
    spec.partial_count = a.partials;
    spec.phase_seed = a.phase_seed;
    return spec;
}

int run_synth(const SynthArgs& a) {
    const auto spec = spec_from(a);
    std::vector<std::string> warnings;
    const auto x = scat::synthesize(spec, a.duration, a.sample_rate, &warnings);
    print_warnings(warnings);
    scat::write_wav(a.output, x);
    return kExitOk;
}

// --------------------------------------------------------------- validate

struct ValidateArgs {
    std::string config;
    std::string report = "validation_report.json";
    SynthArgs scene;  // synthesis side of the scenario
    int q1 = 16;
    int q2 = 1;
    int j = 7;
    int hop = 256;
    double alpha_lo = 0.5, alpha_hi = 4.0;
    double beta_max = 4.0, gamma_max = 0.5;
    double t_eval = 1.0;
    int partial = 3;
    // Partials at non-power-of-two harmonics keep enough octave-direction
    // support above this ratio for a well-posed plane fit.
    double threshold_ratio = 0.6;
    double tol_theta = 0.15, tol_eta = 0.20, tol_ratio = 0.1;
};

int run_validate(const ValidateArgs& a) {
    const auto spec = spec_from(a.scene);
    json report;
    report["scenario"] = {{"duration", a.scene.duration},
                          {"sample_rate", a.scene.sample_rate},
                          {"partials", a.scene.partials},
                          {"q1", a.q1},
                          {"q2", a.q2},
                          {"t_eval", a.t_eval},
                          {"partial", a.partial}};
    bool pass = true;
    try {
        std::vector<std::string> warnings;
        const auto x =
            scat::synthesize(spec, a.scene.duration, a.scene.sample_rate,
                             &warnings);
        print_warnings(warnings);

        const auto mother = scat::design_mother_wavelet(a.q1);
        const auto bank = scat::build_first_order_bank(
            mother, a.q1, a.j, a.scene.sample_rate, 65536);
        const auto x1 = scat::compute_scalogram(x, bank, a.hop);

        scat::SpiralBankParams p;
        p.alpha_lo = a.alpha_lo;
        p.alpha_hi = a.alpha_hi;
        p.beta_max = a.beta_max;
        p.gamma_max = a.gamma_max;
        p.q2 = a.q2;
        p.bins_per_octave = a.q1;
        p.octave_count = a.j;
        p.frame_rate = a.scene.sample_rate / a.hop;
        const auto banks = scat::build_spiral_banks(p);
        const auto x2 = scat::spiral_scattering(x1, banks.alpha, banks.beta,
                                                banks.gamma);

        // Slice at the configured time and the analyzed partial.
        const std::size_t t_frame = std::min(
            x2.frames - 1,
            static_cast<std::size_t>(std::lround(a.t_eval * x2.sample_rate /
                                                 x2.hop)));
        const double target =
            a.partial * spec.source_warp.d1(a.t_eval);
        std::size_t bin = 0;
        for (std::size_t i = 0; i < x2.freq_axis.size(); ++i)
            if (std::abs(std::log2(x2.freq_axis[i] / target)) <
                std::abs(std::log2(x2.freq_axis[bin] / target)))
                bin = i;

        const auto fit =
            scat::fit_ridge_plane(x2, t_frame, bin, a.threshold_ratio);
        const auto predicted = scat::predicted_plane(spec, a.t_eval);
        const auto assumptions =
            scat::check_assumptions(spec, bank, a.partial, a.t_eval);

        const double err_theta =
            std::abs(fit.plane.v_theta - predicted.v_theta) /
            std::max(std::abs(predicted.v_theta), 1e-12);
        const double err_eta = std::abs(fit.plane.v_eta - predicted.v_eta) /
                               std::max(std::abs(predicted.v_eta), 1e-12);
        const bool ratios_ok = assumptions.a_ok &&
                               assumptions.ratio_b <= a.tol_ratio &&
                               assumptions.ratio_c <= a.tol_ratio &&
                               assumptions.ratio_d <= a.tol_ratio;
        pass = err_theta <= a.tol_theta && err_eta <= a.tol_eta && ratios_ok;

        report["predicted"] = {{"v_theta", predicted.v_theta},
                               {"v_eta", predicted.v_eta}};
        report["fitted"] = {{"v_theta", fit.plane.v_theta},
                            {"v_eta", fit.plane.v_eta},
                            {"residual", fit.residual},
                            {"selected_channels", fit.selected}};
        report["errors"] = {{"v_theta_rel", err_theta},
                            {"v_eta_rel", err_eta}};
        report["assumption_ratios"] = {{"a", assumptions.ratio_a},
                                       {"b", assumptions.ratio_b},
                                       {"c", assumptions.ratio_c},
                                       {"d", assumptions.ratio_d}};
        report["pass"] = pass;
    } catch (const scat::degenerate_fit& e) {
        report["error"] = e.what();
        report["pass"] = false;
        pass = false;
    }

    std::ofstream out(a.report);
    if (!out) throw scat::io_error("cannot write report " + a.report);
    out << report.dump(2) << "\n";
    std::cout << (pass ? "validation passed" : "validation failed")
              << " (report: " << a.report << ")\n";
    return pass ? kExitOk : kExitValidation;
}

// -------------------------------------------------------------- plot-data

struct PlotArgs {
    std::string tensor;
    std::string out;  // empty = stdout
    double t = 0.0;
    double lambda1 = 0.0;
    double alpha = 0.0;
    bool has_alpha = false;
    double beta = 0.0;
    bool has_beta = false;
    double gamma = 0.0;
    bool has_gamma = false;
};

std::size_t snap_index(double value, const std::vector<double>& grid,
                       const char* axis) {
    if (grid.empty())
        throw scat::invalid_parameter(std::string(axis) + " axis is empty");
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (value < *lo - 1e-9 || value > *hi + 1e-9)
        throw scat::invalid_parameter(
            std::string(axis) + " value " + std::to_string(value) +
            " outside tensor bounds [" + std::to_string(*lo) + ", " +
            std::to_string(*hi) + "]");
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - value) < std::abs(grid[best] - value)) best = i;
    if (std::abs(grid[best] - value) >
        1e-6 * std::max(1.0, std::abs(grid[best])))
        std::cerr << "warning: " << axis << " " << value
                  << " snapped to nearest grid point " << grid[best] << "\n";
    return best;
}

int run_plot(const PlotArgs& a) {
    const auto [values, meta] = scat::load_raw_tensor(a.tensor);
    const auto shape = meta.at("shape").get<std::vector<std::size_t>>();
    if (shape.size() != 3 || !meta.contains("lambda2_axis"))
        throw scat::invalid_parameter(
            "plot-data needs a second-order tensor with a lambda2 axis");
    const std::size_t frames = shape[0], bins = shape[1], channels = shape[2];

    const double frame_rate =
        meta.at("sample_rate").get<double>() / meta.at("hop").get<double>();
    std::vector<double> time_axis(frames);
    for (std::size_t i = 0; i < frames; ++i) time_axis[i] = i / frame_rate;
    const auto freq_axis = meta.at("freq_axis_hz").get<std::vector<double>>();

    const std::size_t t_idx = snap_index(a.t, time_axis, "t");
    const std::size_t f_idx = snap_index(a.lambda1, freq_axis, "lambda1");

    struct Channel {
        double alpha, beta, gamma;
    };
    std::vector<Channel> axis;
    for (const auto& e : meta.at("lambda2_axis")) {
        const auto signs = e.at("signs").get<std::vector<int>>();
        axis.push_back({e.at("alpha_hz").get<double>(),
                        signs[0] * e.at("beta_cpo").get<double>(),
                        signs[1] * e.at("gamma_cpo").get<double>()});
    }
    if (axis.size() != channels)
        throw scat::io_error("sidecar lambda2 axis does not match tensor shape");

    // Snap each fixed lambda2 coordinate onto its grid of distinct values.
    auto distinct = [&](auto get) {
        std::vector<double> g;
        for (const auto& c : axis) g.push_back(get(c));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        return g;
    };
    double fix_alpha = 0.0, fix_beta = 0.0, fix_gamma = 0.0;
    if (a.has_alpha)
        fix_alpha = distinct([](const Channel& c) { return c.alpha; })
            [snap_index(a.alpha, distinct([](const Channel& c) { return c.alpha; }),
                        "alpha")];
    if (a.has_beta)
        fix_beta = distinct([](const Channel& c) { return c.beta; })
            [snap_index(a.beta, distinct([](const Channel& c) { return c.beta; }),
                        "beta")];
    if (a.has_gamma)
        fix_gamma = distinct([](const Channel& c) { return c.gamma; })
            [snap_index(a.gamma, distinct([](const Channel& c) { return c.gamma; }),
                        "gamma")];

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw scat::io_error("cannot write " + a.out);
        os = &file;
    }

    std::vector<std::string> cols;
    if (!a.has_alpha) cols.push_back("alpha_hz");
    if (!a.has_beta) cols.push_back("beta_cpo");
    if (!a.has_gamma) cols.push_back("gamma_cpo");
    for (const auto& c : cols) *os << c << ",";
    *os << "value\n";

    for (std::size_t l = 0; l < channels; ++l) {
        const auto& c = axis[l];
        if (a.has_alpha && c.alpha != fix_alpha) continue;
        if (a.has_beta && c.beta != fix_beta) continue;
        if (a.has_gamma && c.gamma != fix_gamma) continue;
        if (!a.has_alpha) *os << c.alpha << ",";
        if (!a.has_beta) *os << c.beta << ",";
        if (!a.has_gamma) *os << c.gamma << ",";
        *os << values[(t_idx * bins + f_idx) * channels + l] << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spiral scattering analysis of audio signals"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand(
        "analyze", "Scattering analysis of a WAV file to raw tensors");
    analyze->add_option("input", an.input, "input WAV path")->required();
    auto* an_cfg = analyze->add_option("--config", an.config, "JSON config file");
    auto* an_out = analyze->add_option("--out-dir", an.out_dir, "output directory");
    auto* an_mode =
        analyze->add_option("--mode", an.mode, "time, joint, or spiral");
    auto* an_q1 = analyze->add_option("--q1", an.q1, "first-order bins/octave");
    auto* an_q2 = analyze->add_option("--q2", an.q2, "second-order quality factor");
    auto* an_j = analyze->add_option("--j", an.j, "octave count");
    auto* an_T = analyze->add_option("--t", an.T, "averaging support T, seconds");
    auto* an_hop = analyze->add_option("--hop", an.hop, "scalogram hop, samples");
    auto* an_al = analyze->add_option("--alpha-lo", an.alpha_lo, "lowest alpha, Hz");
    auto* an_ah = analyze->add_option("--alpha-hi", an.alpha_hi, "highest alpha, Hz");
    auto* an_bm = analyze->add_option("--beta-max", an.beta_max,
                                      "largest |beta|, cycles/octave");
    auto* an_gm = analyze->add_option("--gamma-max", an.gamma_max,
                                      "largest |gamma|, cycles/octave");

    SynthArgs sy;
    auto* synth = app.add_subcommand(
        "synth", "Render a warped source-filter signal to WAV");
    synth->add_option("output", sy.output, "output WAV path")->required();
    auto* sy_cfg = synth->add_option("--config", sy.config, "JSON config file");
    auto* sy_dur = synth->add_option("--duration", sy.duration, "seconds");
    auto* sy_sr = synth->add_option("--sample-rate", sy.sample_rate, "Hz");
    auto* sy_sf = synth->add_option("--source-family", sy.source_family,
                                    "identity, linear, exponential");
    auto* sy_srt = synth->add_option("--source-rate", sy.source_rate,
                                     "linear source rate, Hz");
    auto* sy_sb = synth->add_option("--source-base", sy.source_base,
                                    "exponential source f0, Hz");
    auto* sy_sv = synth->add_option("--source-velocity", sy.source_velocity,
                                    "source drift, octaves/s");
    auto* sy_ff = synth->add_option("--filter-family", sy.filter_family,
                                    "identity, linear, exponential");
    auto* sy_frt = synth->add_option("--filter-rate", sy.filter_rate,
                                     "linear filter rate");
    auto* sy_fb = synth->add_option("--filter-base", sy.filter_base,
                                    "exponential filter base rate");
    auto* sy_fv = synth->add_option("--filter-velocity", sy.filter_velocity,
                                    "filter drift, octaves/s");
    auto* sy_cut = synth->add_option("--cutoff", sy.cutoff_hz,
                                     "envelope cutoff, Hz");
    auto* sy_p = synth->add_option("--partials", sy.partials, "partial count");
    auto* sy_seed = synth->add_option("--phase-seed", sy.phase_seed,
                                      "random phase seed (0 = zero phases)");

    ValidateArgs va;
    va.scene.duration = 3.0;
    va.scene.sample_rate = 22050.0;
    va.scene.source_family = "exponential";
    va.scene.source_base = 220.0;
    va.scene.source_velocity = 0.5;
    va.scene.filter_family = "exponential";
    va.scene.filter_base = 1.0;
    va.scene.filter_velocity = -0.25;
    va.scene.partials = 16;
    auto* validate = app.add_subcommand(
        "validate",
        "Synthesize, analyze, and check ridge-plane recovery tolerances");
    auto* va_cfg = validate->add_option("--config", va.config, "JSON config file");
    auto* va_rep = validate->add_option("--report", va.report, "report JSON path");
    auto* va_sv = validate->add_option("--source-velocity",
                                       va.scene.source_velocity, "octaves/s");
    auto* va_fv = validate->add_option("--filter-velocity",
                                       va.scene.filter_velocity, "octaves/s");
    auto* va_dur = validate->add_option("--duration", va.scene.duration, "seconds");
    auto* va_sr = validate->add_option("--sample-rate", va.scene.sample_rate, "Hz");
    auto* va_f0 = validate->add_option("--f0", va.scene.source_base, "Hz");
    auto* va_cut = validate->add_option("--cutoff", va.scene.cutoff_hz, "Hz");
    auto* va_p = validate->add_option("--partials", va.scene.partials, "count");
    auto* va_q1 = validate->add_option("--q1", va.q1, "first-order bins/octave");
    auto* va_q2 = validate->add_option("--q2", va.q2, "second-order quality factor");
    auto* va_j = validate->add_option("--j", va.j, "octave count");
    auto* va_hop = validate->add_option("--hop", va.hop, "samples");
    auto* va_t = validate->add_option("--t-eval", va.t_eval, "fit time, seconds");
    auto* va_pp = validate->add_option("--partial", va.partial,
                                       "partial index for the fit slice");
    auto* va_th = validate->add_option("--threshold", va.threshold_ratio,
                                       "fit selection threshold ratio");

    PlotArgs pl;
    auto* plot = app.add_subcommand(
        "plot-data", "Emit a CSV slice of an exported second-order tensor");
    plot->add_option("tensor", pl.tensor, "raw tensor path (.f32)")->required();
    plot->add_option("--out", pl.out, "CSV output path (default stdout)");
    plot->add_option("--t", pl.t, "fixed time, seconds")->required();
    plot->add_option("--lambda1", pl.lambda1, "fixed first-order center, Hz")
        ->required();
    auto* pl_a = plot->add_option("--alpha", pl.alpha, "fixed alpha, Hz");
    auto* pl_b = plot->add_option("--beta", pl.beta,
                                  "fixed signed beta, cycles/octave");
    auto* pl_g = plot->add_option("--gamma", pl.gamma,
                                  "fixed signed gamma, cycles/octave");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*analyze) {
            const json cfg = load_config(an.config);
            from_cfg(cfg, "out_dir", an_out, an.out_dir);
            from_cfg(cfg, "mode", an_mode, an.mode);
            from_cfg(cfg, "q1", an_q1, an.q1);
            from_cfg(cfg, "q2", an_q2, an.q2);
            from_cfg(cfg, "j", an_j, an.j);
            from_cfg(cfg, "t", an_T, an.T);
            from_cfg(cfg, "hop", an_hop, an.hop);
            from_cfg(cfg, "alpha_lo", an_al, an.alpha_lo);
            from_cfg(cfg, "alpha_hi", an_ah, an.alpha_hi);
            from_cfg(cfg, "beta_max", an_bm, an.beta_max);
            from_cfg(cfg, "gamma_max", an_gm, an.gamma_max);
            (void)an_cfg;
            return run_analyze(an);
        }
        if (*synth) {
            const json cfg = load_config(sy.config);
            from_cfg(cfg, "duration", sy_dur, sy.duration);
            from_cfg(cfg, "sample_rate", sy_sr, sy.sample_rate);
            from_cfg(cfg, "source_family", sy_sf, sy.source_family);
            from_cfg(cfg, "source_rate", sy_srt, sy.source_rate);
            from_cfg(cfg, "source_base", sy_sb, sy.source_base);
            from_cfg(cfg, "source_velocity", sy_sv, sy.source_velocity);
            from_cfg(cfg, "filter_family", sy_ff, sy.filter_family);
            from_cfg(cfg, "filter_rate", sy_frt, sy.filter_rate);
            from_cfg(cfg, "filter_base", sy_fb, sy.filter_base);
            from_cfg(cfg, "filter_velocity", sy_fv, sy.filter_velocity);
            from_cfg(cfg, "cutoff", sy_cut, sy.cutoff_hz);
            from_cfg(cfg, "partials", sy_p, sy.partials);
            from_cfg(cfg, "phase_seed", sy_seed, sy.phase_seed);
            (void)sy_cfg;
            return run_synth(sy);
        }
        if (*validate) {
            const json cfg = load_config(va.config);
            from_cfg(cfg, "report", va_rep, va.report);
            from_cfg(cfg, "source_velocity", va_sv, va.scene.source_velocity);
            from_cfg(cfg, "filter_velocity", va_fv, va.scene.filter_velocity);
            from_cfg(cfg, "duration", va_dur, va.scene.duration);
            from_cfg(cfg, "sample_rate", va_sr, va.scene.sample_rate);
            from_cfg(cfg, "f0", va_f0, va.scene.source_base);
            from_cfg(cfg, "cutoff", va_cut, va.scene.cutoff_hz);
            from_cfg(cfg, "partials", va_p, va.scene.partials);
            from_cfg(cfg, "q1", va_q1, va.q1);
            from_cfg(cfg, "q2", va_q2, va.q2);
            from_cfg(cfg, "j", va_j, va.j);
            from_cfg(cfg, "hop", va_hop, va.hop);
            from_cfg(cfg, "t_eval", va_t, va.t_eval);
            from_cfg(cfg, "partial", va_pp, va.partial);
            from_cfg(cfg, "threshold", va_th, va.threshold_ratio);
            (void)va_cfg;
            return run_validate(va);
        }
        if (*plot) {
            pl.has_alpha = pl_a->count() > 0;
            pl.has_beta = pl_b->count() > 0;
            pl.has_gamma = pl_g->count() > 0;
            return run_plot(pl);
        }
    } catch (const scat::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const scat::invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
