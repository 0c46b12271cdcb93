#pragma once

#include <cmath>
#include <vector>

#include "scriptid/dft.hpp"
#include "scriptid/error.hpp"
#include "scriptid/image.hpp"

namespace scriptid {

struct SpectralBlockStats {
    double mean_mag = 0.0;
    double std_mag = 0.0;
};

// Per-block (mean, std) of the normalized DFT magnitudes, row-major block
// order. For the default 4x4 grid this flattens to the 32 values F23-F54.
struct SpectralFeatures {
    int grid_n = 0;
    std::vector<SpectralBlockStats> stats;  // grid_n * grid_n entries

    std::vector<double> flatten() const {
        std::vector<double> out;
        out.reserve(stats.size() * 2);
        for (const auto& s : stats) {
            out.push_back(s.mean_mag);
            out.push_back(s.std_mag);
        }
        return out;
    }
};

namespace detail {

inline SpectralBlockStats block_stats(const RealGrid& block) {
    bool any = false;
    for (double v : block.data)
        if (v != 0.0) {
            any = true;
            break;
        }
    if (!any) return {0.0, 0.0};  // empty cell carries no spectral information

    const RealGrid mag = normalize_magnitude(dft2(block));
    const auto count = static_cast<double>(mag.data.size());
    double mean = 0.0;
    for (double v : mag.data) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : mag.data) var += (v - mean) * (v - mean);
    var /= count;  // population divisor
    return {mean, std::sqrt(var)};
}

}  // namespace detail

// Grid-partitioned DFT magnitude features: crop to the foreground bounding
// box, split into n x n blocks (floor-sized, the last row/column of blocks
// absorbs the remainder), and take per-block magnitude statistics. An
// all-background image degrades to all-zero features; a nonempty crop
// smaller than n x n is an error.
inline SpectralFeatures spectral_features(const BinaryImage& img, int n = 4) {
    if (n < 1) throw std::invalid_argument("spectral_features: n must be >= 1");
    SpectralFeatures out;
    out.grid_n = n;
    out.stats.assign(static_cast<size_t>(n) * n, SpectralBlockStats{});

    const BoundingBox box = foreground_bbox(img);
    if (box.empty()) return out;
    const int w = box.width(), h = box.height();
    if (w < n || h < n)
        throw error("spectral_features: cropped image " + std::to_string(w) + "x" +
                    std::to_string(h) + " is smaller than the " + std::to_string(n) + "x" +
                    std::to_string(n) + " grid");

    const int bw = w / n, bh = h / n;
    for (int by = 0; by < n; ++by) {
        const int y0 = box.min_y + by * bh;
        const int y1 = by == n - 1 ? box.max_y + 1 : y0 + bh;
        for (int bx = 0; bx < n; ++bx) {
            const int x0 = box.min_x + bx * bw;
            const int x1 = bx == n - 1 ? box.max_x + 1 : x0 + bw;
            RealGrid block(x1 - x0, y1 - y0);
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    block.at(x - x0, y - y0) = img.fg(x, y) ? 1.0 : 0.0;
            out.stats[static_cast<size_t>(by) * n + bx] = detail::block_stats(block);
        }
    }
    return out;
}

}  // namespace scriptid
