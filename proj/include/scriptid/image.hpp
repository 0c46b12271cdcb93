#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scriptid {

// 8-bit-range grayscale raster. Intensities are stored as doubles in
// [0, 255] so that filtering does not quantize intermediate results.
// Pixel (0,0) is top-left; x grows rightward, y grows downward.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // row-major, width * height entries

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be >= 1");
        data.assign(static_cast<size_t>(w) * h, fill);
    }

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return data.size(); }
};

// Two-tone raster: 1 = foreground (ink), 0 = background.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // row-major, values in {0, 1}

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("BinaryImage: dimensions must be >= 1");
        data.assign(static_cast<size_t>(w) * h, fill);
    }

    std::uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    bool fg(int x, int y) const { return at(x, y) != 0; }
    size_t size() const { return data.size(); }

    bool any_foreground() const {
        for (auto v : data)
            if (v) return true;
        return false;
    }
};

struct BoundingBox {
    int min_x = 0, min_y = 0, max_x = -1, max_y = -1;  // inclusive; empty when max < min

    bool empty() const { return max_x < min_x || max_y < min_y; }
    int width() const { return empty() ? 0 : max_x - min_x + 1; }
    int height() const { return empty() ? 0 : max_y - min_y + 1; }
};

inline BoundingBox foreground_bbox(const BinaryImage& img) {
    BoundingBox box{img.width, img.height, -1, -1};
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.fg(x, y)) {
                if (x < box.min_x) box.min_x = x;
                if (y < box.min_y) box.min_y = y;
                if (x > box.max_x) box.max_x = x;
                if (y > box.max_y) box.max_y = y;
            }
    return box;
}

}  // namespace scriptid
