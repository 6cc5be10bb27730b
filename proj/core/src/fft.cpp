// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace scat {

namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Plan once on scratch buffers; executed later on caller buffers.
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

std::vector<cplx> transform(const std::vector<cplx>& x, int sign) {
    std::vector<cplx> out(x.size());
    if (x.empty()) return out;
    fftw_plan p = plan_for(x.size(), sign);
    // fftw_complex and std::complex<double> share layout.
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(x.data()));
    auto* o = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(p, in, o);
    return out;
}

}  // namespace

std::vector<cplx> fft(const std::vector<cplx>& x) {
    return transform(x, FFTW_FORWARD);
}

std::vector<cplx> ifft(const std::vector<cplx>& x) {
    std::vector<cplx> out = transform(x, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= inv;
    return out;
}

std::vector<cplx> conv_same(const std::vector<cplx>& x,
                            const std::vector<cplx>& taps, int center) {
    const int n = static_cast<int>(x.size());
    const int k = static_cast<int>(taps.size());
    std::vector<cplx> out(x.size());
    for (int i = 0; i < n; ++i) {
        cplx acc(0.0, 0.0);
        for (int m = 0; m < k; ++m) {
            const int j = i - (m - center);
            if (j < 0 || j >= n) continue;
            acc += taps[static_cast<std::size_t>(m)] *
                   x[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<cplx> fft_conv_same(const std::vector<cplx>& x,
                                const std::vector<cplx>& taps, int center) {
    const std::size_t n = x.size();
    const std::size_t k = taps.size();
    const std::size_t m = next_pow2(n + k);
    std::vector<cplx> xa(m, cplx(0.0, 0.0)), ha(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) xa[i] = x[i];
    for (std::size_t i = 0; i < k; ++i) ha[i] = taps[i];
    auto xf = fft(xa);
    auto hf = fft(ha);
    for (std::size_t i = 0; i < m; ++i) xf[i] *= hf[i];
    auto full = ifft(xf);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = full[i + static_cast<std::size_t>(center)];
    return out;
}

std::vector<cplx> analytic_filter(const std::vector<double>& padded,
                                  const std::vector<double>& spectrum) {
    const std::size_t n = padded.size();
    if (spectrum.size() != n)
        throw invalid_parameter("analytic_filter: grid size mismatch");
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(padded[i], 0.0);
    auto xf = fft(buf);
    for (std::size_t i = 0; i < n; ++i) xf[i] *= spectrum[i];
    return ifft(xf);
}

std::vector<double> reflect_pad(const std::vector<double>& x,
                                std::size_t pad_left, std::size_t pad_right) {
    const std::size_t n = x.size();
    if (n == 0) throw invalid_parameter("reflect_pad: empty input");
    if (pad_left >= n || pad_right >= n)
        throw invalid_parameter("reflect_pad: pad exceeds signal length");
    std::vector<double> out;
    out.reserve(n + pad_left + pad_right);
    for (std::size_t i = pad_left; i > 0; --i) out.push_back(x[i]);
    out.insert(out.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < pad_right; ++i) out.push_back(x[n - 2 - i]);
    return out;
}

}  // namespace scat
