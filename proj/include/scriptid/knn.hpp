#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "scriptid/error.hpp"

namespace scriptid {

// Exemplar store for k-nearest-neighbour voting. Points are kept in the
// standardized feature space; prediction is a linear scan, which is fine at
// the corpus sizes this project targets.
struct KnnParams {
    int k = 3;
    std::vector<std::vector<double>> points;
    std::vector<int> y;
};

inline KnnParams knn_fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         int k) {
    if (k < 1) throw error("knn: k must be at least 1");
    if (x.empty()) throw error("knn: empty training set");
    KnnParams p;
    p.k = std::min<int>(k, static_cast<int>(x.size()));
    p.points = x;
    p.y = y;
    return p;
}

// Vote counts per class over the k nearest exemplars. Distance ties are
// resolved by exemplar insertion order so repeated runs agree exactly.
inline std::vector<double> knn_scores(const KnnParams& p, const std::vector<double>& x,
                                      int n_classes) {
    std::vector<std::pair<double, size_t>> dist(p.points.size());
    for (size_t i = 0; i < p.points.size(); ++i) {
        const auto& q = p.points[i];
        double d2 = 0.0;
        for (size_t j = 0; j < q.size(); ++j) {
            const double d = x[j] - q[j];
            d2 += d * d;
        }
        dist[i] = {d2, i};
    }
    const size_t k = std::min<size_t>(static_cast<size_t>(p.k), dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<double> votes(static_cast<size_t>(n_classes), 0.0);
    for (size_t i = 0; i < k; ++i) votes[static_cast<size_t>(p.y[dist[i].second])] += 1.0;
    return votes;
}

}  // namespace scriptid
