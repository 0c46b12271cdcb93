#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scriptid/image.hpp"

namespace scriptid {

// Sampled 1-D Gaussian, normalized to sum 1.
inline std::vector<double> gaussian_kernel(double sigma, int kernel_size) {
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw std::invalid_argument("gaussian_kernel: kernel_size must be odd and >= 1");
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_kernel: sigma must be > 0");

    const int r = kernel_size / 2;
    std::vector<double> k(static_cast<size_t>(kernel_size));
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + r];
    }
    for (auto& v : k) v /= sum;
    return k;
}

// Separable Gaussian convolution with edge replication at the borders.
inline GrayImage gaussian_smooth(const GrayImage& img, double sigma = 1.0, int kernel_size = 5) {
    const std::vector<double> k = gaussian_kernel(sigma, kernel_size);
    const int r = kernel_size / 2;
    const int w = img.width, h = img.height;

    GrayImage tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i)
                acc += k[i + r] * img.at(std::clamp(x + i, 0, w - 1), y);
            tmp.at(x, y) = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i)
                acc += k[i + r] * tmp.at(x, std::clamp(y + i, 0, h - 1));
            out.at(x, y) = acc;
        }
    return out;
}

}  // namespace scriptid
