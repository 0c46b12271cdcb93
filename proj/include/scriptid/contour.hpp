#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "scriptid/error.hpp"
#include "scriptid/image.hpp"

namespace scriptid {

// 8-directional Freeman codes in image coordinates (y grows downward):
// 0=E, 1=NE, 2=N, 3=NW, 4=W, 5=SW, 6=S, 7=SE. Code 2 points toward
// decreasing y.
inline constexpr std::array<int, 8> kChainDx = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr std::array<int, 8> kChainDy = {0, -1, -1, -1, 0, 1, 1, 1};

inline constexpr double kCircularityCap = 1e6;

// One traced closed outer boundary. A single isolated pixel has an empty
// code sequence.
struct ChainCode {
    int start_x = 0;
    int start_y = 0;
    std::vector<std::uint8_t> codes;
};

struct BoundarySet {
    std::vector<ChainCode> boundaries;
    // Union of pixels visited by all traces; sorted by (y, x), unique.
    std::vector<std::pair<int, int>> boundary_pixels;
    BoundingBox bbox;  // foreground bounding box
    long long foreground_count = 0;
    // Centroid of all foreground pixels, kept relative to the bbox origin so
    // that distance computations are bit-stable under whole-image translation.
    double centroid_local_x = 0.0;
    double centroid_local_y = 0.0;

    bool empty() const { return foreground_count == 0; }
    std::pair<double, double> centroid() const {
        return {bbox.min_x + centroid_local_x, bbox.min_y + centroid_local_y};
    }
};

// F1-F22 block, in feature order.
struct ContourFeatures {
    std::array<double, 8> cch{};         // F1-F8
    std::array<double, 7> first_diff{};  // F9-F15, turn bins -3..+3
    double perimeter = 0.0;              // F16
    double circularity = 0.0;            // F17
    std::array<double, 5> slope_counts{};  // F18-F22: 0, |45|, |90|, |135|, 180 degrees
};

namespace detail {

inline int chain_direction(int dx, int dy) {
    // Inverse of (kChainDx, kChainDy) for the 8 unit displacements.
    static constexpr int table[3][3] = {
        // dy = -1        0        +1      (rows), dx = -1,0,+1 (cols)
        {3, 2, 1},
        {4, -1, 0},
        {5, 6, 7},
    };
    return table[dy + 1][dx + 1];
}

struct Point {
    int x, y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// Moore-neighbor tracing of one 8-connected component, clockwise, stopping
// with Jacob's criterion (the start pixel is reached again and the next move
// repeats the initial one). `visited` receives every pixel the trace passes.
inline ChainCode moore_trace(const BinaryImage& img, Point start, long long component_size,
                             std::vector<Point>& visited) {
    ChainCode chain;
    chain.start_x = start.x;
    chain.start_y = start.y;
    visited.push_back(start);

    auto is_fg = [&](Point p) {
        return p.x >= 0 && p.y >= 0 && p.x < img.width && p.y < img.height && img.fg(p.x, p.y);
    };
    // Clockwise scan around `cur`, starting at the known-background backtrack
    // neighbor. Returns the first foreground direction (or -1) and the last
    // background pixel examined before it.
    auto scan = [&](Point cur, Point backtrack) -> std::pair<int, Point> {
        const int start_dir = chain_direction(backtrack.x - cur.x, backtrack.y - cur.y);
        Point last_bg = backtrack;
        for (int step = 0; step < 8; ++step) {
            const int d = ((start_dir - step) % 8 + 8) % 8;
            const Point n{cur.x + kChainDx[d], cur.y + kChainDy[d]};
            if (is_fg(n)) return {d, last_bg};
            last_bg = n;
        }
        return {-1, last_bg};
    };

    // The row-major-first pixel of a component always has a background (or
    // out-of-image) neighbor to the west.
    const Point backtrack0{start.x - 1, start.y};
    auto [d0, bg0] = scan(start, backtrack0);
    if (d0 < 0) return chain;  // isolated pixel

    Point cur = start;
    Point backtrack = backtrack0;
    const long long step_limit = 8 * component_size + 8;
    while (true) {
        auto [d, last_bg] = scan(cur, backtrack);
        if (d < 0) throw error("moore_trace: lost the boundary (corrupt image state)");
        if (!chain.codes.empty() && cur == start && d == d0) break;
        chain.codes.push_back(static_cast<std::uint8_t>(d));
        cur = Point{cur.x + kChainDx[d], cur.y + kChainDy[d]};
        backtrack = last_bg;
        visited.push_back(cur);
        if (static_cast<long long>(chain.codes.size()) > step_limit)
            throw error("moore_trace: step limit exceeded");
    }
    visited.pop_back();  // final pixel is the start again
    return chain;
}

}  // namespace detail

// Traces the outer boundary of every 8-connected foreground component in
// row-major discovery order. Inner (hole) boundaries are not traced.
inline BoundarySet trace_boundaries(const BinaryImage& img) {
    BoundarySet bs;
    bs.bbox = foreground_bbox(img);
    if (bs.bbox.empty()) return bs;

    const int w = img.width, h = img.height;
    std::vector<std::int32_t> label(static_cast<size_t>(w) * h, 0);
    std::vector<detail::Point> stack;
    std::vector<long long> component_size;
    std::vector<detail::Point> component_start;

    double sum_x = 0.0, sum_y = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!img.fg(x, y)) continue;
            ++bs.foreground_count;
            sum_x += x - bs.bbox.min_x;
            sum_y += y - bs.bbox.min_y;
            if (label[static_cast<size_t>(y) * w + x] != 0) continue;

            const auto id = static_cast<std::int32_t>(component_size.size() + 1);
            component_size.push_back(0);
            component_start.push_back({x, y});
            stack.push_back({x, y});
            label[static_cast<size_t>(y) * w + x] = id;
            while (!stack.empty()) {
                const auto p = stack.back();
                stack.pop_back();
                ++component_size.back();
                for (int d = 0; d < 8; ++d) {
                    const int nx = p.x + kChainDx[d], ny = p.y + kChainDy[d];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    auto& l = label[static_cast<size_t>(ny) * w + nx];
                    if (img.fg(nx, ny) && l == 0) {
                        l = id;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }

    bs.centroid_local_x = sum_x / static_cast<double>(bs.foreground_count);
    bs.centroid_local_y = sum_y / static_cast<double>(bs.foreground_count);

    std::vector<detail::Point> visited;
    for (size_t c = 0; c < component_start.size(); ++c)
        bs.boundaries.push_back(
            detail::moore_trace(img, component_start[c], component_size[c], visited));

    bs.boundary_pixels.reserve(visited.size());
    for (const auto& p : visited) bs.boundary_pixels.emplace_back(p.y, p.x);
    std::sort(bs.boundary_pixels.begin(), bs.boundary_pixels.end());
    bs.boundary_pixels.erase(std::unique(bs.boundary_pixels.begin(), bs.boundary_pixels.end()),
                             bs.boundary_pixels.end());
    for (auto& p : bs.boundary_pixels) std::swap(p.first, p.second);  // back to (x, y)
    return bs;
}

// F1-F8: normalized frequency of each code over all boundaries.
inline std::array<double, 8> chain_code_histogram(const BoundarySet& bs) {
    std::array<double, 8> hist{};
    long long total = 0;
    for (const auto& b : bs.boundaries)
        for (auto c : b.codes) {
            hist[c] += 1.0;
            ++total;
        }
    if (total > 0)
        for (auto& v : hist) v /= static_cast<double>(total);
    return hist;
}

// F9-F15: histogram of cyclic first differences mapped to signed turns
// {-3..+3}; exact reversals (difference 4) are excluded. Bin i holds turn
// value i-3.
inline std::array<double, 7> first_difference_histogram(const BoundarySet& bs) {
    std::array<double, 7> hist{};
    long long counted = 0;
    for (const auto& b : bs.boundaries) {
        const size_t n = b.codes.size();
        if (n == 0) continue;
        for (size_t i = 0; i < n; ++i) {
            const int d = (static_cast<int>(b.codes[(i + 1) % n]) - b.codes[i] + 8) % 8;
            if (d == 4) continue;
            const int turn = d <= 3 ? d : d - 8;
            hist[turn + 3] += 1.0;
            ++counted;
        }
    }
    if (counted > 0)
        for (auto& v : hist) v /= static_cast<double>(counted);
    return hist;
}

// F16: |P| = even-code count + sqrt(2) * odd-code count.
inline double perimeter_length(const BoundarySet& bs) {
    long long even = 0, odd = 0;
    for (const auto& b : bs.boundaries)
        for (auto c : b.codes)
            (c % 2 == 0 ? even : odd) += 1;
    return static_cast<double>(even) + std::sqrt(2.0) * static_cast<double>(odd);
}

// F17: Haralick circularity, the ratio of the mean to the standard deviation
// (population, divisor K) of the centroid-to-boundary distances. Degenerate
// spreads below 1e-9 return the cap.
inline double circularity(const BoundarySet& bs) {
    if (bs.empty() || bs.boundary_pixels.empty())
        throw error("circularity: empty boundary set");

    const size_t k = bs.boundary_pixels.size();
    std::vector<double> dist(k);
    for (size_t i = 0; i < k; ++i) {
        const double dx = (bs.boundary_pixels[i].first - bs.bbox.min_x) - bs.centroid_local_x;
        const double dy = (bs.boundary_pixels[i].second - bs.bbox.min_y) - bs.centroid_local_y;
        dist[i] = std::sqrt(dx * dx + dy * dy);
    }
    double mean = 0.0;
    for (double d : dist) mean += d;
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (double d : dist) var += (d - mean) * (d - mean);
    var /= static_cast<double>(k);
    const double sd = std::sqrt(var);
    if (sd < 1e-9) return kCircularityCap;
    return mean / sd;
}

// F18-F22: slope-angle bins {0, |45|, |90|, |135|, 180} degrees, grouping
// codes {0}, {1,7}, {2,6}, {3,5}, {4}; normalized by total code count.
inline std::array<double, 5> slope_counts(const BoundarySet& bs) {
    static constexpr std::array<int, 8> bin_of = {0, 1, 2, 3, 4, 3, 2, 1};
    std::array<double, 5> bins{};
    long long total = 0;
    for (const auto& b : bs.boundaries)
        for (auto c : b.codes) {
            bins[bin_of[c]] += 1.0;
            ++total;
        }
    if (total > 0)
        for (auto& v : bins) v /= static_cast<double>(total);
    return bins;
}

// The full F1-F22 block. An empty image yields all zeros.
inline ContourFeatures contour_features(const BinaryImage& img) {
    ContourFeatures f;
    const BoundarySet bs = trace_boundaries(img);
    if (bs.empty()) return f;
    f.cch = chain_code_histogram(bs);
    f.first_diff = first_difference_histogram(bs);
    f.perimeter = perimeter_length(bs);
    f.circularity = circularity(bs);
    f.slope_counts = slope_counts(bs);
    return f;
}

// Debug overlay: background white, foreground light gray, traced boundary
// pixels black.
inline GrayImage boundary_overlay(const BinaryImage& img, const BoundarySet& bs) {
    GrayImage out(img.width, img.height, 255.0);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.fg(x, y)) out.at(x, y) = 180.0;
    for (const auto& [x, y] : bs.boundary_pixels) out.at(x, y) = 0.0;
    return out;
}

// Text dump: one boundary per line, start coordinate then the code digits.
inline void dump_chain_codes(const BoundarySet& bs, std::ostream& out) {
    for (const auto& b : bs.boundaries) {
        out << b.start_x << " " << b.start_y << " ";
        for (auto c : b.codes) out << static_cast<int>(c);
        out << "\n";
    }
}

inline void dump_chain_codes(const BoundarySet& bs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    dump_chain_codes(bs, out);
}

}  // namespace scriptid
