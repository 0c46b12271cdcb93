#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "scriptid/image.hpp"

namespace scriptid {

struct RealGrid {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // row-major

    RealGrid() = default;
    RealGrid(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}
    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

struct ComplexGrid {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> data;

    ComplexGrid() = default;
    ComplexGrid(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h) {}
    std::complex<double>& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    const std::complex<double>& at(int x, int y) const {
        return data[static_cast<size_t>(y) * width + x];
    }
};

namespace detail {

using cd = std::complex<double>;

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, unscaled. sign = -1 forward, +1 inverse.
inline void fft_pow2(std::vector<cd>& a, int sign) {
    const size_t n = a.size();
    if (n < 2) return;
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddle table for the full size; coarser levels stride through it.
    std::vector<cd> tw(n / 2);
    for (size_t j = 0; j < n / 2; ++j)
        tw[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                                    static_cast<double>(n));
    for (size_t len = 2; len <= n; len <<= 1) {
        const size_t stride = n / len;
        for (size_t i = 0; i < n; i += len)
            for (size_t j = 0; j < len / 2; ++j) {
                const cd w = tw[j * stride];
                const cd u = a[i + j];
                const cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
    }
}

// Bluestein's chirp-z algorithm for arbitrary lengths, built on the
// power-of-two kernel. Unscaled, same sign convention.
inline void fft_bluestein(std::vector<cd>& a, int sign) {
    const size_t n = a.size();
    size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // w[k] = exp(sign * i * pi * k^2 / n); k^2 reduced mod 2n keeps the
    // angle argument small.
    std::vector<cd> w(n);
    for (size_t k = 0; k < n; ++k) {
        const auto k2 = static_cast<std::uint64_t>(k) * k % (2 * n);
        w[k] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(k2) /
                                   static_cast<double>(n));
    }

    std::vector<cd> u(m), v(m);
    for (size_t k = 0; k < n; ++k) u[k] = a[k] * w[k];
    v[0] = std::conj(w[0]);
    for (size_t k = 1; k < n; ++k) v[k] = v[m - k] = std::conj(w[k]);

    fft_pow2(u, -1);
    fft_pow2(v, -1);
    for (size_t k = 0; k < m; ++k) u[k] *= v[k];
    fft_pow2(u, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (size_t k = 0; k < n; ++k) a[k] = u[k] * inv_m * w[k];
}

inline void fft(std::vector<cd>& a, int sign) {
    if (a.size() < 2) return;
    if (is_pow2(a.size()))
        fft_pow2(a, sign);
    else
        fft_bluestein(a, sign);
}

}  // namespace detail

// Forward 2-D DFT with 1/(MN) normalization:
//   G(u,v) = 1/(MN) * sum_{m,n} g(m,n) exp(-j*2*pi*(m*u/M + n*v/N))
// where M is the height and N the width. Computed row-column with 1-D FFTs.
inline ComplexGrid dft2(const RealGrid& g) {
    if (g.width < 1 || g.height < 1) throw std::invalid_argument("dft2: empty input");
    ComplexGrid G(g.width, g.height);
    for (size_t i = 0; i < g.data.size(); ++i) G.data[i] = g.data[i];

    std::vector<std::complex<double>> buf;
    for (int y = 0; y < g.height; ++y) {
        buf.assign(G.data.begin() + static_cast<size_t>(y) * g.width,
                   G.data.begin() + static_cast<size_t>(y + 1) * g.width);
        detail::fft(buf, -1);
        std::copy(buf.begin(), buf.end(), G.data.begin() + static_cast<size_t>(y) * g.width);
    }
    for (int x = 0; x < g.width; ++x) {
        buf.resize(static_cast<size_t>(g.height));
        for (int y = 0; y < g.height; ++y) buf[y] = G.at(x, y);
        detail::fft(buf, -1);
        for (int y = 0; y < g.height; ++y) G.at(x, y) = buf[y];
    }
    const double scale = 1.0 / (static_cast<double>(g.width) * g.height);
    for (auto& c : G.data) c *= scale;
    return G;
}

// Magnitudes scaled to unit L2 norm; an all-zero spectrum stays all zero.
inline RealGrid normalize_magnitude(const ComplexGrid& G) {
    RealGrid out(G.width, G.height);
    double sumsq = 0.0;
    for (size_t i = 0; i < G.data.size(); ++i) {
        out.data[i] = std::abs(G.data[i]);
        sumsq += out.data[i] * out.data[i];
    }
    if (sumsq > 0.0) {
        const double inv = 1.0 / std::sqrt(sumsq);
        for (auto& v : out.data) v *= inv;
    }
    return out;
}

// Log-scaled, center-shifted magnitude and phase renderings of the full-image
// spectrum, for visual inspection.
inline std::pair<GrayImage, GrayImage> spectrum_images(const GrayImage& img) {
    RealGrid g(img.width, img.height);
    g.data = img.data;
    const ComplexGrid G = dft2(g);

    GrayImage mag(img.width, img.height), phase(img.width, img.height);
    double max_log = 0.0;
    std::vector<double> logs(G.data.size());
    for (size_t i = 0; i < G.data.size(); ++i) {
        logs[i] = std::log1p(std::abs(G.data[i]));
        if (logs[i] > max_log) max_log = logs[i];
    }
    const double pi = std::numbers::pi;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const int sx = (x + img.width / 2) % img.width;
            const int sy = (y + img.height / 2) % img.height;
            const size_t i = static_cast<size_t>(y) * img.width + x;
            mag.at(sx, sy) = max_log > 0.0 ? 255.0 * logs[i] / max_log : 0.0;
            phase.at(sx, sy) = 255.0 * (std::arg(G.data[i]) + pi) / (2.0 * pi);
        }
    return {std::move(mag), std::move(phase)};
}

}  // namespace scriptid
