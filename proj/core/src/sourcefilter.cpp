// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/sourcefilter.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scat/fft.hpp"
#include "scat/scalogram.hpp"

namespace scat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kLn2 = std::log(2.0);
}  // namespace

double WarpSpec::value(double t) const {
    switch (family) {
        case Family::identity: return t;
        case Family::linear_scale: return rate * t;
        case Family::exponential: {
            const double k = velocity * kLn2;
            if (std::abs(k) < 1e-12) return base_rate * t;
            return base_rate * std::expm1(k * t) / k;
        }
    }
    return t;
}

double WarpSpec::d1(double t) const {
    switch (family) {
        case Family::identity: return 1.0;
        case Family::linear_scale: return rate;
        case Family::exponential:
            return base_rate * std::exp(velocity * kLn2 * t);
    }
    return 1.0;
}

double WarpSpec::d2(double t) const {
    if (family != Family::exponential) return 0.0;
    return velocity * kLn2 * d1(t);
}

double WarpSpec::d3(double t) const {
    if (family != Family::exponential) return 0.0;
    const double k = velocity * kLn2;
    return k * k * d1(t);
}

double WarpSpec::octave_velocity(double t) const {
    return d2(t) / d1(t) / kLn2;
}

void WarpSpec::validate(double t0, double t1) const {
    const int steps = 64;
    for (int i = 0; i <= steps; ++i) {
        const double t = t0 + (t1 - t0) * i / steps;
        if (d1(t) <= 0.0)
            throw invalid_parameter("WarpSpec: warp must be orientation-preserving");
        const double h = 1e-4;
        const double fd = (value(t + h) - value(t - h)) / (2.0 * h);
        if (std::abs(fd - d1(t)) > 1e-6 * std::max(1.0, std::abs(d1(t))))
            throw invalid_parameter("WarpSpec: inconsistent derivative evaluators");
    }
}

WarpSpec WarpSpec::identity() { return WarpSpec{}; }

WarpSpec WarpSpec::linear(double rate) {
    WarpSpec w;
    w.family = Family::linear_scale;
    w.rate = rate;
    return w;
}

WarpSpec WarpSpec::exponential(double base_rate, double velocity) {
    WarpSpec w;
    w.family = Family::exponential;
    w.base_rate = base_rate;
    w.velocity = velocity;
    return w;
}

Signal synthesize(const SourceFilterSpec& spec, double duration,
                  double sample_rate, std::vector<std::string>* warnings) {
    if (duration <= 0.0 || sample_rate <= 0.0)
        throw invalid_parameter("synthesize: bad duration or sample rate");
    if (spec.partial_count < 1)
        throw invalid_parameter("synthesize: need at least one partial");
    spec.source_warp.validate(0.0, duration);
    spec.filter_warp.validate(0.0, duration);

    const double nyquist = sample_rate / 2.0;
    const double peak_rate =
        std::max(spec.source_warp.d1(0.0), spec.source_warp.d1(duration));
    int partials = spec.partial_count;
    while (partials >= 1 && partials * peak_rate >= nyquist) --partials;
    if (partials < spec.partial_count && warnings)
        warnings->push_back("partials above Nyquist clipped: keeping " +
                            std::to_string(partials) + " of " +
                            std::to_string(spec.partial_count));
    if (partials < 1)
        throw invalid_parameter("synthesize: fundamental at or above Nyquist");

    std::vector<double> phases(static_cast<std::size_t>(partials), 0.0);
    if (spec.phase_seed != 0) {
        std::mt19937 rng(spec.phase_seed);
        std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
        for (auto& p : phases) p = dist(rng);
    }

    Signal out;
    out.sample_rate = sample_rate;
    const std::size_t n = static_cast<std::size_t>(std::llround(duration * sample_rate));
    out.samples.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        const double theta = spec.source_warp.value(t);
        const double rate = spec.source_warp.d1(t);
        const double dilation = spec.filter_warp.d1(t);
        double acc = 0.0;
        for (int p = 1; p <= partials; ++p) {
            const double amp = spec.envelope.amplitude(p * rate / dilation);
            acc += amp * std::cos(2.0 * kPi * p * theta +
                                  phases[static_cast<std::size_t>(p - 1)]);
        }
        out.samples[i] = acc;
    }
    return out;
}

AssumptionReport check_assumptions(const SourceFilterSpec& spec,
                                   const WaveletFilterbank& bank, int p,
                                   double t, double T) {
    if (p < 1 || p > spec.partial_count)
        throw invalid_parameter("check_assumptions: partial index out of range");
    const double Q = bank.Q;
    AssumptionReport r;
    r.ratio_a = 2.0 * p / Q;
    r.a_ok = r.ratio_a < 1.0;

    const double lambda1 = p * spec.source_warp.d1(t);
    const double half_support = bank.mother.time_support / lambda1 / 2.0;
    const int steps = 32;
    double sup_b = 0.0, sup_c = 0.0, sup_d = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double tau = t - half_support + 2.0 * half_support * i / steps;
        sup_b = std::max(sup_b, std::abs(spec.source_warp.d2(tau) /
                                         spec.source_warp.d1(tau)));
        const double eta1 = spec.filter_warp.d1(tau);
        sup_c = std::max(sup_c, std::abs(spec.filter_warp.d2(tau) / eta1));
        sup_d = std::max(sup_d, spec.envelope.log_slope(lambda1 / eta1) / eta1);
    }
    r.ratio_b = sup_b * Q / lambda1;
    r.ratio_c = sup_c * Q / lambda1;
    r.ratio_d = sup_d * lambda1 / Q;
    r.b_ok = r.ratio_b <= 0.1;
    r.c_ok = r.ratio_c <= 0.1;
    r.d_ok = r.ratio_d <= 0.1;

    if (T > 0.0) {
        auto avg_ratio = [&](const WarpSpec& w) {
            const double second = w.d2(t);
            if (std::abs(second) < 1e-12 * std::max(1.0, std::abs(w.d1(t))))
                return 0.0;
            return std::abs(w.d3(t) / second - second / w.d1(t)) * T;
        };
        r.ratio_avg_theta = avg_ratio(spec.source_warp);
        r.ratio_avg_eta = avg_ratio(spec.filter_warp);
    }
    return r;
}

RidgePlane predicted_plane(const SourceFilterSpec& spec, double t) {
    RidgePlane plane;
    plane.v_theta = spec.source_warp.octave_velocity(t);
    plane.v_eta = spec.filter_warp.octave_velocity(t);
    plane.t = t;
    return plane;
}

namespace {

const FilterMember& find_member(const WaveletFilterbank& bank, double signed_center,
                                const char* what) {
    for (const auto& m : bank.members)
        if (std::abs(m.signed_center() - signed_center) <=
            1e-9 * std::max(1.0, std::abs(signed_center)))
            return m;
    throw invalid_parameter(std::string("closed_form_x2: no ") + what +
                            " member at the requested center");
}

}  // namespace

ClosedFormResult closed_form_x2(const SourceFilterSpec& spec,
                                const WaveletFilterbank& first_order,
                                const WaveletFilterbank& alpha_bank,
                                const WaveletFilterbank& beta_bank,
                                const WaveletFilterbank& gamma_bank,
                                std::size_t lambda1_bin,
                                const SpiralIndex& lambda2, double t) {
    if (lambda1_bin >= first_order.members.size())
        throw invalid_parameter("closed_form_x2: bin out of range");
    const double lambda1 = first_order.members[lambda1_bin].center;
    const double theta1 = spec.source_warp.d1(t);
    const double eta1 = spec.filter_warp.d1(t);

    ClosedFormResult res;
    {
        const int p = std::clamp(
            static_cast<int>(std::lround(lambda1 / theta1)), 1, spec.partial_count);
        const auto report = check_assumptions(spec, first_order, p, t);
        res.degraded = !report.all_ok();
    }

    const std::size_t bins = first_order.members.size();
    std::vector<cplx> source_profile(bins), filter_profile(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double lam = first_order.members[b].center;
        double comb = 0.0;
        for (int p = 1; p <= spec.partial_count; ++p)
            comb += first_order.mother.evaluate(p * theta1 / lam);
        source_profile[b] = 0.5 * comb;  // analytic modulus of a real partial
        filter_profile[b] = spec.envelope.amplitude(lam / eta1);
    }

    const FilterMember& beta_m = find_member(beta_bank, lambda2.beta, "beta");
    const auto conv_beta = conv_same(source_profile, beta_m.taps, beta_m.taps_center);
    res.factor_source = std::abs(conv_beta[lambda1_bin]);

    const FilterMember& gamma_m = find_member(gamma_bank, lambda2.gamma, "gamma");
    const int Q = static_cast<int>(first_order.Q);
    const std::size_t chroma = lambda1_bin % static_cast<std::size_t>(Q);
    std::vector<cplx> oct;
    std::size_t j_index = 0;
    for (std::size_t f = chroma; f < bins; f += static_cast<std::size_t>(Q)) {
        if (f == lambda1_bin) j_index = oct.size();
        oct.push_back(filter_profile[f]);
    }
    const auto conv_gamma = conv_same(oct, gamma_m.taps, gamma_m.taps_center);
    res.factor_filter = std::abs(conv_gamma[j_index]);

    const RidgePlane plane = predicted_plane(spec, t);
    const double drift =
        -(plane.v_theta * lambda2.beta + plane.v_eta * lambda2.gamma);
    res.factor_alpha = alpha_bank.mother.evaluate(drift / lambda2.alpha);

    res.value = res.factor_source * res.factor_filter * res.factor_alpha;
    return res;
}

PlaneFit fit_ridge_plane(const ScatteringTensor& tensor, std::size_t t_frame,
                         std::size_t lambda1_bin, double threshold_ratio) {
    if (tensor.mode != ScatteringMode::spiral)
        throw invalid_parameter("fit_ridge_plane: tensor mode must be spiral");
    if (threshold_ratio <= 0.0 || threshold_ratio >= 1.0)
        throw invalid_parameter("fit_ridge_plane: threshold_ratio in (0, 1)");
    if (t_frame >= tensor.frames || lambda1_bin >= tensor.bins)
        throw invalid_parameter("fit_ridge_plane: index out of range");

    double top = 0.0;
    for (std::size_t l = 0; l < tensor.channels(); ++l)
        top = std::max(top, tensor.at(t_frame, lambda1_bin, l));

    double sbb = 0.0, sgg = 0.0, sbg = 0.0, sab = 0.0, sag = 0.0;
    double saa = 0.0, wsum = 0.0;
    std::size_t selected = 0;
    std::vector<std::size_t> chosen;
    for (std::size_t l = 0; l < tensor.channels(); ++l) {
        const double w = tensor.at(t_frame, lambda1_bin, l);
        if (w < threshold_ratio * top) continue;
        const SpiralIndex& ix = tensor.lambda2_axis[l];
        sbb += w * ix.beta * ix.beta;
        sgg += w * ix.gamma * ix.gamma;
        sbg += w * ix.beta * ix.gamma;
        sab += w * ix.alpha * ix.beta;
        sag += w * ix.alpha * ix.gamma;
        saa += w * ix.alpha * ix.alpha;
        wsum += w;
        ++selected;
        chosen.push_back(l);
    }
    const double det = sbb * sgg - sbg * sbg;
    if (selected < 3 || det <= 1e-12 * std::max(1.0, sbb * sgg))
        throw degenerate_fit("fit_ridge_plane: selected channels are too few "
                             "or collinear in (beta, gamma)");

    PlaneFit fit;
    fit.selected = selected;
    fit.plane.v_theta = (-sab * sgg + sag * sbg) / det;
    fit.plane.v_eta = (-sag * sbb + sab * sbg) / det;
    fit.plane.t =
        static_cast<double>(t_frame) * tensor.hop / tensor.sample_rate;

    double rss = 0.0;
    for (std::size_t l : chosen) {
        const SpiralIndex& ix = tensor.lambda2_axis[l];
        const double r = ix.alpha + fit.plane.v_theta * ix.beta +
                         fit.plane.v_eta * ix.gamma;
        rss += tensor.at(t_frame, lambda1_bin, l) * r * r;
    }
    fit.residual = std::sqrt(rss / wsum) / std::sqrt(saa / wsum);
    return fit;
}

}  // namespace scat
