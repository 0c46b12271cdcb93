#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "scriptid/error.hpp"
#include "scriptid/image.hpp"

namespace scriptid {

enum class InkPolarity { DarkInk, LightInk };

inline std::array<std::int64_t, 256> intensity_histogram(const GrayImage& img) {
    std::array<std::int64_t, 256> hist{};
    for (double v : img.data) {
        long q = std::lround(v);
        if (q < 0) q = 0;
        if (q > 255) q = 255;
        ++hist[static_cast<size_t>(q)];
    }
    return hist;
}

// Otsu's threshold: t maximizing the between-class variance
// w0*w1*(mu0-mu1)^2 over the 256-bin histogram; intensities <= t form the
// lower class. Ties resolve to the smallest t. Returns -1 when the image has
// a single intensity (no split exists).
inline int otsu_threshold(const GrayImage& img) {
    const auto hist = intensity_histogram(img);
    const double total = static_cast<double>(img.size());

    int populated = 0;
    for (auto c : hist)
        if (c > 0) ++populated;
    if (populated < 2) return -1;

    double sum_all = 0.0;
    for (int i = 0; i < 256; ++i) sum_all += static_cast<double>(i) * hist[i];

    double w0 = 0.0, sum0 = 0.0, best = -1.0;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        w0 += hist[t];
        sum0 += static_cast<double>(t) * hist[t];
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double between = (w0 / total) * (w1 / total) * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

// Global binarization. For dark ink, intensities <= t* become foreground;
// for light ink the other class does. A single-intensity image has no Otsu
// split and maps to all-background with a warning.
inline BinaryImage otsu_binarize(const GrayImage& img, InkPolarity polarity = InkPolarity::DarkInk) {
    BinaryImage out(img.width, img.height, 0);
    const int t = otsu_threshold(img);
    if (t < 0) {
        warn("otsu_binarize: single-intensity image, emitting all background");
        return out;
    }
    for (size_t i = 0; i < img.data.size(); ++i) {
        long q = std::lround(img.data[i]);
        if (q < 0) q = 0;
        if (q > 255) q = 255;
        const bool low = q <= t;
        out.data[i] = (polarity == InkPolarity::DarkInk ? low : !low) ? 1 : 0;
    }
    return out;
}

}  // namespace scriptid
