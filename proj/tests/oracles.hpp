// Independent reference implementations used only by the tests. Everything
// here favours obviousness over speed so it can serve as ground truth for the
// optimized library code.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <scriptid/dft.hpp>
#include <scriptid/error.hpp>
#include <scriptid/image.hpp>

namespace oracles {

// Collects library warnings for the lifetime of the instance, then restores
// whatever sink was installed before.
struct WarningCapture {
    std::vector<std::string> messages;
    std::function<void(const std::string&)> previous;

    WarningCapture() {
        previous = scriptid::warning_sink();
        scriptid::warning_sink() = [this](const std::string& m) { messages.push_back(m); };
    }
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;
    ~WarningCapture() { scriptid::warning_sink() = previous; }

    bool any_contains(const std::string& needle) const {
        for (const auto& m : messages)
            if (m.find(needle) != std::string::npos) return true;
        return false;
    }
};

// Direct O(M^2 N^2) 2-D transform with the same 1/(MN) forward scale.
inline scriptid::ComplexGrid naive_dft2(const scriptid::RealGrid& g) {
    const int M = g.height, N = g.width;
    scriptid::ComplexGrid out(N, M);
    const double scale = 1.0 / (static_cast<double>(M) * N);
    for (int u = 0; u < M; ++u)
        for (int v = 0; v < N; ++v) {
            std::complex<double> sum(0.0, 0.0);
            for (int y = 0; y < M; ++y)
                for (int x = 0; x < N; ++x) {
                    const double angle = -2.0 * 3.14159265358979323846 *
                                         (static_cast<double>(u) * y / M +
                                          static_cast<double>(v) * x / N);
                    sum += g.at(x, y) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
            out.at(v, u) = sum * scale;
        }
    return out;
}

// Exhaustive between-class-variance sweep; ties go to the smallest threshold.
inline int exhaustive_otsu(const std::array<int64_t, 256>& hist) {
    int64_t total = 0;
    for (int64_t c : hist) total += c;
    int populated = 0;
    for (int64_t c : hist)
        if (c > 0) ++populated;
    if (populated < 2) return -1;

    int best_t = -1;
    double best_var = -1.0;
    for (int t = 0; t < 256; ++t) {
        int64_t n0 = 0;
        double sum0 = 0.0;
        for (int q = 0; q <= t; ++q) {
            n0 += hist[q];
            sum0 += static_cast<double>(q) * hist[q];
        }
        const int64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        double sum1 = 0.0;
        for (int q = t + 1; q < 256; ++q) sum1 += static_cast<double>(q) * hist[q];
        const double w0 = static_cast<double>(n0) / total;
        const double w1 = static_cast<double>(n1) / total;
        const double mu0 = sum0 / n0, mu1 = sum1 / n1;
        const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

// Outer-boundary pixels, computed per 8-connected component: flood the
// background 4-connectedly (through a 1-pixel virtual frame) starting from
// the cell just west of the component's row-major-first pixel, then keep the
// component pixels 4-adjacent to that region. This is the region an outer
// Moore trace walks along; hole-facing pixels are excluded, and a component
// sitting inside another component's hole gets its own surrounding region.
inline std::set<std::pair<int, int>> boundary_pixels_oracle(const scriptid::BinaryImage& img) {
    const int w = img.width, h = img.height;
    const auto fg = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h && img.fg(x, y);
    };

    // 8-connected component labels in row-major discovery order.
    std::vector<int> label(static_cast<size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> first_pixel;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!img.fg(x, y) || label[static_cast<size_t>(y) * w + x] != 0) continue;
            const int id = static_cast<int>(first_pixel.size()) + 1;
            first_pixel.push_back({x, y});
            std::queue<std::pair<int, int>> q;
            q.push({x, y});
            label[static_cast<size_t>(y) * w + x] = id;
            while (!q.empty()) {
                const auto [cx, cy] = q.front();
                q.pop();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (!fg(nx, ny)) continue;
                        auto& l = label[static_cast<size_t>(ny) * w + nx];
                        if (l == 0) {
                            l = id;
                            q.push({nx, ny});
                        }
                    }
            }
        }

    std::set<std::pair<int, int>> out;
    const int pw = w + 2, ph = h + 2;  // padded coordinates, frame is background
    for (const auto& [sx, sy] : first_pixel) {
        std::vector<uint8_t> region(static_cast<size_t>(pw) * ph, 0);
        std::queue<std::pair<int, int>> q;
        const auto push = [&](int px, int py) {
            if (px < 0 || py < 0 || px >= pw || py >= ph) return;
            if (fg(px - 1, py - 1)) return;
            auto& r = region[static_cast<size_t>(py) * pw + px];
            if (r) return;
            r = 1;
            q.push({px, py});
        };
        push(sx - 1 + 1, sy + 1);  // the cell west of the first pixel
        while (!q.empty()) {
            const auto [px, py] = q.front();
            q.pop();
            push(px + 1, py);
            push(px - 1, py);
            push(px, py + 1);
            push(px, py - 1);
        }
        const int id = label[static_cast<size_t>(sy) * w + sx];
        const auto in_region = [&](int x, int y) {
            return region[static_cast<size_t>(y + 1) * pw + (x + 1)] != 0;
        };
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (label[static_cast<size_t>(y) * w + x] != id) continue;
                if (in_region(x + 1, y) || in_region(x - 1, y) || in_region(x, y + 1) ||
                    in_region(x, y - 1))
                    out.insert({x, y});
            }
    }
    return out;
}

// Plain 2-D convolution with a full outer-product Gaussian kernel and
// replicated edges; the library computes the same thing separably.
inline scriptid::GrayImage direct_gaussian(const scriptid::GrayImage& img, double sigma,
                                           int ksize) {
    const int half = ksize / 2;
    std::vector<double> k1(static_cast<size_t>(ksize));
    double sum = 0.0;
    for (int i = 0; i < ksize; ++i) {
        const double d = i - half;
        k1[static_cast<size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += k1[static_cast<size_t>(i)];
    }
    for (double& v : k1) v /= sum;

    scriptid::GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int dy = -half; dy <= half; ++dy)
                for (int dx = -half; dx <= half; ++dx) {
                    const int sx = std::clamp(x + dx, 0, img.width - 1);
                    const int sy = std::clamp(y + dy, 0, img.height - 1);
                    acc += k1[static_cast<size_t>(dx + half)] *
                           k1[static_cast<size_t>(dy + half)] * img.at(sx, sy);
                }
            out.at(x, y) = acc;
        }
    return out;
}

// Pairwise-comparison AUC: P(score_pos > score_neg) + 0.5 P(equal).
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<char>& positive) {
    double wins = 0.0;
    long n_pos = 0, n_neg = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (!positive[i]) continue;
        ++n_pos;
        for (size_t j = 0; j < scores.size(); ++j) {
            if (positive[j]) continue;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    for (size_t j = 0; j < scores.size(); ++j)
        if (!positive[j]) ++n_neg;
    if (n_pos == 0 || n_neg == 0) return std::numeric_limits<double>::quiet_NaN();
    return wins / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// Brute-force nearest neighbours by full sort, ties by index.
inline int brute_knn_label(const std::vector<std::vector<double>>& pts,
                           const std::vector<int>& y, const std::vector<double>& x, int k,
                           int n_classes) {
    std::vector<std::pair<double, size_t>> d;
    for (size_t i = 0; i < pts.size(); ++i) {
        double s = 0.0;
        for (size_t j = 0; j < x.size(); ++j) s += (x[j] - pts[i][j]) * (x[j] - pts[i][j]);
        d.push_back({s, i});
    }
    std::sort(d.begin(), d.end());
    std::vector<int> votes(static_cast<size_t>(n_classes), 0);
    for (int i = 0; i < k && i < static_cast<int>(d.size()); ++i)
        ++votes[static_cast<size_t>(y[d[static_cast<size_t>(i)].second])];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

inline int nearest_centroid_label(const std::vector<std::vector<double>>& pts,
                                  const std::vector<int>& y, const std::vector<double>& x,
                                  int n_classes) {
    const size_t dim = x.size();
    std::vector<std::vector<double>> centroid(static_cast<size_t>(n_classes),
                                              std::vector<double>(dim, 0.0));
    std::vector<double> count(static_cast<size_t>(n_classes), 0.0);
    for (size_t i = 0; i < pts.size(); ++i) {
        count[static_cast<size_t>(y[i])] += 1.0;
        for (size_t j = 0; j < dim; ++j) centroid[static_cast<size_t>(y[i])][j] += pts[i][j];
    }
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_classes; ++c) {
        double d = 0.0;
        for (size_t j = 0; j < dim; ++j) {
            const double m = centroid[static_cast<size_t>(c)][j] / count[static_cast<size_t>(c)];
            d += (x[j] - m) * (x[j] - m);
        }
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

// --- seeded random inputs -----------------------------------------------------

inline scriptid::GrayImage random_gray(int w, int h, std::mt19937_64& rng) {
    scriptid::GrayImage img(w, h);
    for (double& v : img.data) v = static_cast<double>(rng() % 256);
    return img;
}

// A few random rectangles and discs on an empty field; produces multi-blob
// masks with holes once shapes overlap.
inline scriptid::BinaryImage random_blobs(int w, int h, std::mt19937_64& rng, int shapes = 6) {
    scriptid::BinaryImage img(w, h);
    for (int s = 0; s < shapes; ++s) {
        if (rng() % 2 == 0) {
            const int x0 = static_cast<int>(rng() % static_cast<uint64_t>(w));
            const int y0 = static_cast<int>(rng() % static_cast<uint64_t>(h));
            const int bw = 1 + static_cast<int>(rng() % static_cast<uint64_t>(w / 3 + 1));
            const int bh = 1 + static_cast<int>(rng() % static_cast<uint64_t>(h / 3 + 1));
            for (int y = y0; y < std::min(h, y0 + bh); ++y)
                for (int x = x0; x < std::min(w, x0 + bw); ++x)
                    img.data[static_cast<size_t>(y) * w + x] = 1;
        } else {
            const int cx = static_cast<int>(rng() % static_cast<uint64_t>(w));
            const int cy = static_cast<int>(rng() % static_cast<uint64_t>(h));
            const int r = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(w, h) / 4 + 1));
            for (int y = std::max(0, cy - r); y <= std::min(h - 1, cy + r); ++y)
                for (int x = std::max(0, cx - r); x <= std::min(w - 1, cx + r); ++x)
                    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r)
                        img.data[static_cast<size_t>(y) * w + x] = 1;
        }
    }
    return img;
}

inline scriptid::BinaryImage filled_rect(int w, int h, int pad = 3) {
    scriptid::BinaryImage img(w + 2 * pad, h + 2 * pad);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.data[static_cast<size_t>(y + pad) * img.width + (x + pad)] = 1;
    return img;
}

inline scriptid::BinaryImage filled_disc(int r, int pad = 3) {
    const int side = 2 * r + 1 + 2 * pad;
    scriptid::BinaryImage img(side, side);
    const int c = r + pad;
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            if ((x - c) * (x - c) + (y - c) * (y - c) <= r * r)
                img.data[static_cast<size_t>(y) * side + x] = 1;
    return img;
}

}  // namespace oracles
