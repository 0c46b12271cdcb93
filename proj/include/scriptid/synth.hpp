#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "scriptid/corpus.hpp"
#include "scriptid/error.hpp"
#include "scriptid/image.hpp"
#include "scriptid/image_io.hpp"

namespace scriptid {

// Synthetic text-line corpus: each class is a distinct stroke texture, so the
// contour and spectral features have something real to separate. Rendering is
// fully deterministic per (seed, class, line).
struct SynthSpec {
    int classes = 8;
    int lines_per_class = 100;
    int width = 320;
    int height = 96;
    uint64_t seed = 0;
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t image_seed(uint64_t seed, int class_idx, int line_idx) {
    uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ static_cast<uint64_t>(class_idx));
    s = splitmix64(s ^ static_cast<uint64_t>(line_idx));
    return s;
}

// Hand-rolled draws from the raw engine output keep the byte stream
// independent of which standard library defined the distributions.
inline int rand_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class StrokeCanvas {
  public:
    StrokeCanvas(int w, int h) : w_(w), h_(h), mask_(static_cast<size_t>(w) * h, 0) {}

    void dot(double cx, double cy, double r) {
        const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
        const int x1 = std::min(w_ - 1, static_cast<int>(std::ceil(cx + r)));
        const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
        const int y1 = std::min(h_ - 1, static_cast<int>(std::ceil(cy + r)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy <= r * r) mask_[static_cast<size_t>(y) * w_ + x] = 1;
            }
    }

    void stroke(double x0, double y0, double x1, double y1, double half_width) {
        const double len = std::hypot(x1 - x0, y1 - y0);
        const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
        for (int i = 0; i <= steps; ++i) {
            const double t = static_cast<double>(i) / steps;
            dot(x0 + t * (x1 - x0), y0 + t * (y1 - y0), half_width);
        }
    }

    void arc(double cx, double cy, double r, double a0, double a1, double half_width) {
        const double span = a1 - a0;
        const int steps = std::max(4, static_cast<int>(std::ceil(std::fabs(span) * r * 2.0)));
        for (int i = 0; i <= steps; ++i) {
            const double a = a0 + span * static_cast<double>(i) / steps;
            dot(cx + r * std::cos(a), cy + r * std::sin(a), half_width);
        }
    }

    bool covers_half_width() const {
        int min_x = w_, max_x = -1;
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x)
                if (mask_[static_cast<size_t>(y) * w_ + x]) {
                    min_x = std::min(min_x, x);
                    max_x = std::max(max_x, x);
                }
        return max_x >= 0 && (max_x - min_x + 1) * 2 >= w_;
    }

    uint8_t at(int x, int y) const { return mask_[static_cast<size_t>(y) * w_ + x]; }

  private:
    int w_, h_;
    std::vector<uint8_t> mask_;
};

// One texture element of the given style. Styles cycle when there are more
// than eight classes.
inline void draw_element(StrokeCanvas& c, int style, int w, int h, std::mt19937_64& rng) {
    const double margin = 8.0;
    const auto rx = [&](double reserve) {
        return margin + rand_unit(rng) * (w - 2.0 * margin - reserve);
    };
    const auto ry = [&](double reserve) {
        return margin + rand_unit(rng) * (h - 2.0 * margin - reserve);
    };
    switch (style % 8) {
        case 0: {  // long horizontal bars
            const double len = 40.0 + rand_unit(rng) * 40.0;
            const double x = rx(len), y = ry(0);
            c.stroke(x, y, x + len, y, 1.4);
            break;
        }
        case 1: {  // vertical bars
            const double len = 24.0 + rand_unit(rng) * 30.0;
            const double x = rx(0), y = ry(len);
            c.stroke(x, y, x, y + len, 1.4);
            break;
        }
        case 2: {  // rising diagonals
            const double len = 22.0 + rand_unit(rng) * 22.0;
            const double x = rx(len), y = ry(len) + len;
            c.stroke(x, y, x + len, y - len, 1.4);
            break;
        }
        case 3: {  // falling diagonals
            const double len = 22.0 + rand_unit(rng) * 22.0;
            const double x = rx(len), y = ry(len);
            c.stroke(x, y, x + len, y + len, 1.4);
            break;
        }
        case 4: {  // crosshatch cells with a dot
            const double s = 9.0 + rand_unit(rng) * 6.0;
            const double x = rx(2.0 * s), y = ry(2.0 * s) + s;
            c.stroke(x, y, x + 2.0 * s, y, 1.2);
            c.stroke(x + s, y - s, x + s, y + s, 1.2);
            c.dot(x + 2.0 * s + 3.0, y - s, 1.8);
            break;
        }
        case 5: {  // closed loops
            const double r = 9.0 + rand_unit(rng) * 8.0;
            const double x = margin + r + rand_unit(rng) * (w - 2.0 * margin - 2.0 * r);
            const double y = margin + r + rand_unit(rng) * (h - 2.0 * margin - 2.0 * r);
            c.arc(x, y, r, 0.0, 6.283185307179586, 1.4);
            break;
        }
        case 6: {  // dense short ticks in every direction
            const double len = 5.0 + rand_unit(rng) * 6.0;
            const double x = rx(len), y = ry(len) + len * 0.5;
            const double a = rand_unit(rng) * 6.283185307179586;
            c.stroke(x, y, x + len * std::cos(a), y + len * std::sin(a), 1.1);
            break;
        }
        default: {  // sparse wide arcs and dots
            const double r = 16.0 + rand_unit(rng) * 14.0;
            const double x = margin + r + rand_unit(rng) * (w - 2.0 * margin - 2.0 * r);
            const double y = h * 0.5 + (rand_unit(rng) - 0.5) * (h - 2.0 * margin - 2.0 * r);
            const double a0 = rand_unit(rng) * 6.283185307179586;
            c.arc(x, std::clamp(y, margin + r, h - margin - r), r, a0,
                  a0 + 1.6 + rand_unit(rng) * 1.6, 1.3);
            if (rng() % 2 == 0) c.dot(rx(0), ry(0), 1.8);
            break;
        }
    }
}

inline int elements_for_style(int style, int w, int h, std::mt19937_64& rng) {
    const double area_scale = static_cast<double>(w) * h / (320.0 * 96.0);
    int base;
    switch (style % 8) {
        case 0: base = 14; break;
        case 1: base = 18; break;
        case 2: base = 16; break;
        case 3: base = 16; break;
        case 4: base = 10; break;
        case 5: base = 9; break;
        case 6: base = 55; break;
        default: base = 5; break;
    }
    const int scaled = std::max(2, static_cast<int>(std::lround(base * area_scale)));
    return scaled + rand_int(rng, 0, std::max(1, scaled / 8));
}

}  // namespace detail

inline std::string synth_label(int class_idx, int classes) {
    int digits = 2;
    for (int v = classes - 1; v >= 100; v /= 10) ++digits;
    std::string num = std::to_string(class_idx);
    while (static_cast<int>(num.size()) < digits) num.insert(num.begin(), '0');
    return "synth_" + num;
}

inline GrayImage render_synth_line(const SynthSpec& spec, int class_idx, int line_idx) {
    if (spec.width < 64 || spec.height < 48)
        throw error("synth: image size must be at least 64x48");
    std::mt19937_64 rng(detail::image_seed(spec.seed, class_idx, line_idx));
    detail::StrokeCanvas canvas(spec.width, spec.height);

    const int n = detail::elements_for_style(class_idx, spec.width, spec.height, rng);
    for (int i = 0; i < n; ++i)
        detail::draw_element(canvas, class_idx, spec.width, spec.height, rng);
    // Text lines run the full width; top up until the ink does too.
    for (int guard = 0; guard < 200 && !canvas.covers_half_width(); ++guard)
        detail::draw_element(canvas, class_idx, spec.width, spec.height, rng);

    GrayImage img(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const double v = canvas.at(x, y)
                                 ? 40.0 + detail::rand_int(rng, -15, 15)
                                 : 235.0 + detail::rand_int(rng, -8, 8);
            img.at(x, y) = v;
        }
    // A little paper grime away from the ink.
    const int specks = spec.width * spec.height / 900;
    for (int i = 0; i < specks; ++i) {
        const int x = detail::rand_int(rng, 0, spec.width - 1);
        const int y = detail::rand_int(rng, 0, spec.height - 1);
        if (!canvas.at(x, y)) img.at(x, y) = 150.0 + detail::rand_int(rng, -20, 20);
    }
    return img;
}

// Renders the whole corpus under `out_dir` (one subdirectory per class, plus
// a manifest.csv with per-image seeds) and returns the corpus description.
inline Corpus generate_synth_corpus(const SynthSpec& spec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (spec.classes < 2) throw error("synth: need at least two classes");
    if (spec.lines_per_class < 1) throw error("synth: need at least one line per class");
    fs::create_directories(out_dir);

    Corpus corpus;
    std::ofstream manifest(fs::path(out_dir) / "manifest.csv");
    if (!manifest) throw io_error("cannot write manifest in " + out_dir);
    manifest << "path,label,seed\n";

    int line_digits = 4;
    for (int v = spec.lines_per_class - 1; v >= 10000; v /= 10) ++line_digits;
    for (int c = 0; c < spec.classes; ++c) {
        const std::string label = synth_label(c, spec.classes);
        fs::create_directories(fs::path(out_dir) / label);
        for (int i = 0; i < spec.lines_per_class; ++i) {
            std::string num = std::to_string(i);
            while (static_cast<int>(num.size()) < line_digits) num.insert(num.begin(), '0');
            const std::string rel = label + "/line_" + num + ".pgm";
            const fs::path path = fs::path(out_dir) / rel;
            write_pgm(render_synth_line(spec, c, i), path.string());
            manifest << rel << ',' << label << ',' << detail::image_seed(spec.seed, c, i)
                     << '\n';
            corpus.items.push_back({path.string(), label});
        }
        corpus.labels.push_back(label);
    }
    if (!manifest) throw io_error("failed while writing manifest in " + out_dir);
    return corpus;
}

}  // namespace scriptid
