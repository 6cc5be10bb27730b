// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scat/fft.hpp"

namespace scat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gauss(double x, double sigma) {
    return std::exp(-x * x / (2.0 * sigma * sigma));
}

// Profile before recentering/peak normalization.
double raw_profile(double omega, double sigma, double kappa) {
    if (omega < 0.0) return 0.0;
    return gauss(omega - 1.0, sigma) - kappa * gauss(omega, sigma);
}

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double MotherWavelet::evaluate(double omega) const {
    if (omega <= 0.0) return 0.0;
    return raw_profile(omega * peak_omega, sigma, kappa) / peak_scale;
}

double MotherWavelet::bandwidth_3db() const {
    const double level = 1.0 / std::sqrt(2.0);
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const bool below = spectrum[k - 1] < level;
        const bool above = spectrum[k] >= level;
        const double w0 = (static_cast<double>(k) - 1.0) * grid_step;
        if (below && above && lo == 0.0) {
            const double t = (level - spectrum[k - 1]) / (spectrum[k] - spectrum[k - 1]);
            lo = w0 + t * grid_step;
        }
        if (!below && !above && spectrum[k - 1] >= level && hi == 0.0) {
            const double t = (spectrum[k - 1] - level) / (spectrum[k - 1] - spectrum[k]);
            hi = w0 + t * grid_step;
        }
    }
    return hi - lo;
}

MotherWavelet design_mother_wavelet(double Q) {
    if (Q < 1.0)
        throw invalid_parameter("design_mother_wavelet: Q must be >= 1");
    MotherWavelet mw;
    mw.quality_factor = Q;
    // -3 dB bandwidth of the main Gaussian lobe equals 1/Q.
    mw.sigma = 1.0 / (2.0 * Q * std::sqrt(std::log(2.0)));
    mw.kappa = std::exp(-1.0 / (2.0 * mw.sigma * mw.sigma));
    mw.time_support = 2.0 * Q;

    // Locate the raw peak (slightly above 1 once the correction term is
    // non-negligible) and fold it into the frequency scale so the
    // normalized spectrum peaks exactly at omega = 1.
    double a = 0.5, b = 1.5;
    for (int it = 0; it < 200; ++it) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (raw_profile(m1, mw.sigma, mw.kappa) <
            raw_profile(m2, mw.sigma, mw.kappa))
            a = m1;
        else
            b = m2;
    }
    mw.peak_omega = 0.5 * (a + b);
    mw.peak_scale = raw_profile(mw.peak_omega, mw.sigma, mw.kappa);

    mw.grid_step = mw.sigma / 32.0;
    const double span = 1.0 + 8.0 * mw.sigma;
    const std::size_t bins = static_cast<std::size_t>(span / mw.grid_step) + 1;
    mw.spectrum.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        mw.spectrum[k] = mw.evaluate(static_cast<double>(k) * mw.grid_step);
    return mw;
}

std::vector<double> WaveletFilterbank::sample_spectrum(
    std::size_t i, std::size_t n, double sr) const {
    const FilterMember& m = members.at(i);
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * sr / static_cast<double>(n);
        out[k] = mother.evaluate(f / m.center);
    }
    return out;
}

double WaveletFilterbank::response_at(std::size_t i, double freq) const {
    const FilterMember& m = members.at(i);
    if (is_time_bank()) return mother.evaluate(freq / m.center);
    // Axis banks: DTFT magnitude of the sampled impulse response.
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < m.taps.size(); ++k) {
        const double u = (static_cast<double>(k) - m.taps_center) * grid_step;
        acc += m.taps[k] * std::exp(cplx(0.0, -2.0 * kPi * freq * u));
    }
    return std::abs(acc);
}

WaveletFilterbank build_first_order_bank(const MotherWavelet& mother, int Q,
                                         int J, double sample_rate,
                                         std::size_t fft_size) {
    if (Q < 1 || J < 1 || Q * J < 1)
        throw invalid_parameter("build_first_order_bank: need J*Q >= 1");
    if (sample_rate <= 0.0 || fft_size < 16)
        throw invalid_parameter("build_first_order_bank: bad grid");
    const double nyquist = sample_rate / 2.0;
    // Highest grid point at or below nyquist * 2^(-1/Q).
    const int m_top = static_cast<int>(
        std::floor(Q * std::log2(nyquist) - 1.0 + 1e-9));
    const int count = J * Q;

    WaveletFilterbank bank;
    bank.kind = BankKind::first_order_time;
    bank.Q = Q;
    bank.J = J;
    bank.sample_rate = sample_rate;
    bank.fft_size = fft_size;
    bank.mother = mother;
    bank.members.reserve(static_cast<std::size_t>(count));
    for (int m = m_top - count + 1; m <= m_top; ++m) {
        FilterMember fm;
        fm.center = std::exp2(static_cast<double>(m) / Q);
        fm.sign = 1;
        fm.j1 = floor_div(m, Q);
        fm.chi1 = m - Q * fm.j1;
        bank.members.push_back(std::move(fm));
    }
    const double lowest = bank.members.front().center;
    if (lowest < sample_rate / static_cast<double>(fft_size))
        throw invalid_parameter(
            "build_first_order_bank: lowest center below the representable "
            "duration of the analysis grid");
    for (std::size_t i = 0; i < bank.members.size(); ++i)
        bank.members[i].spectrum = bank.sample_spectrum(i, fft_size, sample_rate);
    return bank;
}

namespace {

// Sample a bandpass impulse response over an axis with spacing
// `grid_step` (octaves) by designing the analytic spectrum on a fine
// circular grid and rotating the kernel to zero lag. The sampled taps get
// an exact zero-mean correction: integer-rate sampling of wide-band
// members (gamma near 0.5 cycles/octave) otherwise leaves a DC residue.
FilterMember make_axis_bandpass(const MotherWavelet& mother, double center,
                                int sign, double grid_step) {
    const double sigma_f = mother.sigma * center;   // cycles/octave
    const double sigma_t = 1.0 / (2.0 * kPi * sigma_f);  // octaves
    const double extent = 5.0 * sigma_t;
    const int half = std::max(2, static_cast<int>(std::ceil(extent / grid_step)));
    const std::size_t m = next_pow2(static_cast<std::size_t>(4 * half + 16));

    std::vector<cplx> spec(m, cplx(0.0, 0.0));
    const double df = 1.0 / (static_cast<double>(m) * grid_step);
    for (std::size_t k = 0; k < m; ++k) {
        const double nu =
            (k <= m / 2 ? static_cast<double>(k)
                        : static_cast<double>(k) - static_cast<double>(m)) * df;
        spec[k] = mother.evaluate(sign > 0 ? nu / center : -nu / center);
    }
    auto impulse = ifft(spec);

    FilterMember fm;
    fm.center = center;
    fm.sign = sign;
    fm.taps_center = half;
    fm.taps.resize(static_cast<std::size_t>(2 * half + 1));
    for (int i = -half; i <= half; ++i)
        fm.taps[static_cast<std::size_t>(i + half)] =
            impulse[static_cast<std::size_t>((i + static_cast<int>(m)) %
                                             static_cast<int>(m))];

    cplx total = std::accumulate(fm.taps.begin(), fm.taps.end(), cplx(0.0, 0.0));
    std::vector<double> env(fm.taps.size());
    double env_sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        env[static_cast<std::size_t>(i + half)] =
            gauss(static_cast<double>(i) * grid_step, sigma_t);
        env_sum += env[static_cast<std::size_t>(i + half)];
    }
    for (std::size_t i = 0; i < fm.taps.size(); ++i)
        fm.taps[i] -= total * (env[i] / env_sum);
    return fm;
}

// Gaussian lowpass member over `support` octaves, unit DC gain.
FilterMember make_axis_lowpass(double support, double grid_step) {
    const double sigma_u = support / 4.0;
    const int half = std::max(1, static_cast<int>(std::round(support / 2.0 / grid_step)));
    FilterMember fm;
    fm.center = 0.0;
    fm.sign = 0;
    fm.taps_center = half;
    fm.taps.resize(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double v = gauss(static_cast<double>(i) * grid_step, sigma_u);
        fm.taps[static_cast<std::size_t>(i + half)] = v;
        sum += v;
    }
    for (auto& t : fm.taps) t /= sum;
    return fm;
}

std::vector<double> geometric_branch(double top, double octaves, int q) {
    std::vector<double> out;
    const int steps = static_cast<int>(std::round(octaves * q));
    for (int k = steps; k >= 0; --k)
        out.push_back(top * std::exp2(-static_cast<double>(k) / q));
    return out;  // ascending
}

}  // namespace

SpiralBanks build_spiral_banks(const SpiralBankParams& p) {
    if (p.q2 != 1 && p.q2 != 2)
        throw invalid_parameter("build_spiral_banks: Q2 must be 1 or 2");
    if (p.alpha_lo <= 0.0 || p.alpha_hi < p.alpha_lo)
        throw invalid_parameter("build_spiral_banks: empty alpha range");
    if (p.beta_max <= 0.0 || p.gamma_max <= 0.0)
        throw invalid_parameter("build_spiral_banks: empty beta/gamma range");
    if (p.octave_count < 2)
        throw invalid_parameter(
            "build_spiral_banks: octave convolution needs at least 2 octaves");
    if (p.frame_rate <= 0.0)
        throw invalid_parameter("build_spiral_banks: frame rate required");
    if (p.bins_per_octave < 1)
        throw invalid_parameter("build_spiral_banks: bad chroma resolution");
    if (p.beta_max > p.bins_per_octave / 2.0)
        throw invalid_parameter("build_spiral_banks: beta_max above the "
                                "log-frequency grid Nyquist");

    const MotherWavelet mother = design_mother_wavelet(p.q2);

    SpiralBanks banks;
    banks.alpha.kind = BankKind::alpha_time;
    banks.alpha.Q = p.q2;
    banks.alpha.sample_rate = p.frame_rate;
    banks.alpha.fft_size = 4096;
    banks.alpha.mother = mother;
    {
        const double alpha_octaves = std::log2(p.alpha_hi / p.alpha_lo);
        for (double c : geometric_branch(p.alpha_hi, alpha_octaves, p.q2)) {
            FilterMember fm;
            fm.center = c;
            fm.sign = 1;
            banks.alpha.members.push_back(std::move(fm));
        }
        for (std::size_t i = 0; i < banks.alpha.members.size(); ++i)
            banks.alpha.members[i].spectrum = banks.alpha.sample_spectrum(
                i, banks.alpha.fft_size, p.frame_rate);
    }

    auto fill_signed_bank = [&](WaveletFilterbank& bank, BankKind kind,
                                double top, double octaves, double grid_step,
                                double lowpass_support) {
        bank.kind = kind;
        bank.Q = p.q2;
        bank.J = p.octave_count;
        bank.grid_step = grid_step;
        bank.mother = mother;
        auto branch = geometric_branch(top, octaves, p.q2);
        // Ascending signed centers: negative branch, lowpass, positive.
        for (auto it = branch.rbegin(); it != branch.rend(); ++it)
            bank.members.push_back(make_axis_bandpass(mother, *it, -1, grid_step));
        bank.members.push_back(make_axis_lowpass(lowpass_support, grid_step));
        for (double c : branch)
            bank.members.push_back(make_axis_bandpass(mother, c, +1, grid_step));
    };

    fill_signed_bank(banks.beta, BankKind::beta_logfreq, p.beta_max,
                     p.beta_octaves, 1.0 / p.bins_per_octave, 1.0);
    fill_signed_bank(banks.gamma, BankKind::gamma_octave, p.gamma_max,
                     p.gamma_octaves, 1.0,
                     static_cast<double>(std::min(6, p.octave_count)));
    return banks;
}

WaveletFilterbank make_identity_bank(BankKind kind, double grid_step) {
    WaveletFilterbank bank;
    bank.kind = kind;
    bank.Q = 1;
    bank.grid_step = grid_step;
    FilterMember fm;
    fm.center = 0.0;
    fm.sign = 1;
    fm.taps = {cplx(1.0, 0.0)};
    fm.taps_center = 0;
    bank.members.push_back(std::move(fm));
    return bank;
}

double LowpassWindow::response_at(double freq) const {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const double t = (static_cast<double>(k) - center) / sample_rate;
        acc += taps[k] * std::exp(cplx(0.0, -2.0 * kPi * freq * t));
    }
    return std::abs(acc);
}

LowpassWindow make_lowpass_window(double T, double sample_rate) {
    if (T <= 0.0 || sample_rate <= 0.0)
        throw invalid_parameter("make_lowpass_window: bad parameters");
    const double sigma_t = T / 4.0;
    const int half = std::max(1, static_cast<int>(std::ceil(T / 2.0 * sample_rate)));
    LowpassWindow lp;
    lp.T = T;
    lp.sample_rate = sample_rate;
    lp.center = half;
    lp.taps.resize(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double v = gauss(static_cast<double>(i) / sample_rate, sigma_t);
        lp.taps[static_cast<std::size_t>(i + half)] = v;
        sum += v;
    }
    for (auto& t : lp.taps) t /= sum;
    return lp;
}

LowpassWindow make_audit_lowpass(const WaveletFilterbank& bank) {
    if (!bank.is_time_bank() || bank.members.empty() || bank.fft_size == 0)
        throw invalid_parameter("make_audit_lowpass: need a sampled time bank");
    const std::size_t n = bank.fft_size;
    const double df = bank.sample_rate / static_cast<double>(n);
    const double lowest = bank.members.front().center;

    // Spectral complement of the bank coverage below its lowest center.
    std::vector<double> phi_hat(n / 2 + 1, 0.0);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        if (f > lowest) break;
        double w = 0.0;
        for (const auto& m : bank.members)
            w += m.spectrum[k] * m.spectrum[k];
        phi_hat[k] = std::sqrt(std::max(0.0, 1.0 - w));
    }

    std::vector<cplx> spec(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k <= n / 2; ++k) {
        spec[k] = phi_hat[k];
        if (k > 0 && k < n / 2) spec[n - k] = phi_hat[k];
    }
    auto impulse = ifft(spec);

    // Truncate where the response has decayed.
    double peak = 0.0;
    for (const auto& v : impulse) peak = std::max(peak, std::abs(v.real()));
    std::size_t half = n / 2 - 1;
    while (half > 1 && std::abs(impulse[half].real()) < 1e-7 * peak &&
           std::abs(impulse[n - half].real()) < 1e-7 * peak)
        --half;

    LowpassWindow lp;
    lp.sample_rate = bank.sample_rate;
    lp.center = static_cast<int>(half);
    lp.taps.resize(2 * half + 1);
    for (std::size_t i = 0; i < lp.taps.size(); ++i) {
        const long off = static_cast<long>(i) - static_cast<long>(half);
        lp.taps[i] = impulse[static_cast<std::size_t>(
                                 (off + static_cast<long>(n)) % static_cast<long>(n))]
                         .real();
    }
    double sum = std::accumulate(lp.taps.begin(), lp.taps.end(), 0.0);
    for (auto& t : lp.taps) t /= sum;
    lp.T = static_cast<double>(2 * half + 1) / bank.sample_rate;
    return lp;
}

LittlewoodPaleyProfile littlewood_paley(const WaveletFilterbank& bank,
                                        const LowpassWindow& lowpass) {
    if (!bank.is_time_bank())
        throw invalid_parameter("littlewood_paley: bank must be a time bank");
    if (bank.members.empty() || bank.J == 0 || bank.fft_size == 0)
        throw invalid_parameter("littlewood_paley: empty passband");
    const std::size_t n = bank.fft_size;
    const double df = bank.sample_rate / static_cast<double>(n);

    // Window response on the bank grid via zero-padded FFT.
    std::vector<cplx> w(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < lowpass.taps.size(); ++k) {
        const long off = static_cast<long>(k) - lowpass.center;
        w[static_cast<std::size_t>((off + static_cast<long>(n)) %
                                   static_cast<long>(n))] += lowpass.taps[k];
    }
    auto w_hat = fft(w);

    LittlewoodPaleyProfile out;
    out.freq_step = df;
    out.profile.assign(n / 2 + 1, 0.0);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        double v = std::norm(w_hat[k]);
        for (const auto& m : bank.members) v += m.spectrum[k] * m.spectrum[k];
        out.profile[k] = v;
    }
    const double peak = *std::max_element(out.profile.begin(), out.profile.end());
    for (auto& v : out.profile) v /= peak;

    out.passband_lo = bank.members.front().center * std::exp2(-1.0 / bank.Q);
    out.passband_hi = bank.sample_rate / 2.0 * (1.0 - 1.0 / (2.0 * bank.Q));
    double lo = 1.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        if (f < out.passband_lo || f > out.passband_hi) continue;
        lo = std::min(lo, out.profile[k]);
    }
    out.passband_min = lo;
    return out;
}

}  // namespace scat
