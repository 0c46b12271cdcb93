#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "scriptid/contour.hpp"
#include "scriptid/error.hpp"
#include "scriptid/filter.hpp"
#include "scriptid/image.hpp"
#include "scriptid/spectral.hpp"
#include "scriptid/threshold.hpp"

namespace scriptid {

// Fixed layout of the 54-dimensional vector. Indices are zero-based, so
// feature Fk lives at index k-1.
inline constexpr int kCchOffset = 0;         // F1-F8
inline constexpr int kFirstDiffOffset = 8;   // F9-F15
inline constexpr int kPerimeterIndex = 15;   // F16
inline constexpr int kCircularityIndex = 16; // F17
inline constexpr int kSlopeOffset = 17;      // F18-F22
inline constexpr int kSpectralOffset = 22;   // F23-F54
inline constexpr int kFeatureCount = 54;

static_assert(kSlopeOffset + 5 == kSpectralOffset);
static_assert(kSpectralOffset + 32 == kFeatureCount);

// The default label set: the eight scripts the original corpus covers. The
// set is configurable everywhere so new collections need no format change.
inline const std::vector<std::string>& default_script_labels() {
    static const std::vector<std::string> labels = {"Gujarati", "Kannada", "Malayalam", "Oriya",
                                                    "Tamil",    "Telugu",  "Urdu",      "Roman"};
    return labels;
}

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    std::string label;   // empty when unlabeled
    std::string source;  // provenance, usually the image path

    bool all_finite() const {
        return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
    }
};

struct ExtractConfig {
    double sigma = 1.0;
    int kernel_size = 5;
    InkPolarity polarity = InkPolarity::DarkInk;
    int grid_n = 4;  // must stay 4 for the 54-feature layout
};

inline FeatureVector assemble_features(const ContourFeatures& c, const SpectralFeatures& s) {
    if (s.grid_n != 4)
        throw error("assemble_features: the 54-feature layout requires a 4x4 grid");
    FeatureVector fv;
    std::copy(c.cch.begin(), c.cch.end(), fv.values.begin() + kCchOffset);
    std::copy(c.first_diff.begin(), c.first_diff.end(), fv.values.begin() + kFirstDiffOffset);
    fv.values[kPerimeterIndex] = c.perimeter;
    fv.values[kCircularityIndex] = c.circularity;
    std::copy(c.slope_counts.begin(), c.slope_counts.end(), fv.values.begin() + kSlopeOffset);
    const auto spec = s.flatten();
    std::copy(spec.begin(), spec.end(), fv.values.begin() + kSpectralOffset);
    return fv;
}

// The full pipeline for one image: smooth, binarize, then the contour and
// spectral blocks in fixed F order.
inline FeatureVector extract_features(const GrayImage& img, const ExtractConfig& cfg = {}) {
    const GrayImage smoothed = gaussian_smooth(img, cfg.sigma, cfg.kernel_size);
    const BinaryImage bin = otsu_binarize(smoothed, cfg.polarity);
    return assemble_features(contour_features(bin), spectral_features(bin, cfg.grid_n));
}

}  // namespace scriptid
