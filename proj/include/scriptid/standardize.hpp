#pragma once

#include <cmath>
#include <vector>

#include "scriptid/error.hpp"

namespace scriptid {

// Per-column z-score transform fitted on training data. Columns with
// near-zero spread keep a scale of 1 so constant features pass through
// centered instead of dividing by noise.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    static constexpr double kMinStddev = 1e-12;

    static Standardizer fit(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) throw error("standardizer: cannot fit on an empty sample set");
        const size_t dim = rows.front().size();
        Standardizer s;
        s.mean.assign(dim, 0.0);
        s.stddev.assign(dim, 0.0);
        for (const auto& r : rows) {
            if (r.size() != dim) throw error("standardizer: inconsistent row widths");
            for (size_t j = 0; j < dim; ++j) s.mean[j] += r[j];
        }
        for (size_t j = 0; j < dim; ++j) s.mean[j] /= static_cast<double>(rows.size());
        for (const auto& r : rows)
            for (size_t j = 0; j < dim; ++j) {
                const double d = r[j] - s.mean[j];
                s.stddev[j] += d * d;
            }
        for (size_t j = 0; j < dim; ++j) {
            s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(rows.size()));
            if (s.stddev[j] < kMinStddev) s.stddev[j] = 1.0;
        }
        return s;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        if (x.size() != mean.size())
            throw error("standardizer: input width does not match fitted width");
        std::vector<double> out(x.size());
        for (size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / stddev[j];
        return out;
    }

    std::vector<std::vector<double>> apply_all(const std::vector<std::vector<double>>& rows) const {
        std::vector<std::vector<double>> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(apply(r));
        return out;
    }
};

}  // namespace scriptid
