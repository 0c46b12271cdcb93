#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scriptid/error.hpp"
#include "scriptid/feature_vector.hpp"

namespace scriptid {

// Labeled samples in a form the classifiers consume: rows of doubles plus
// label indices into an ordered label list. The label order fixes every
// deterministic tie-break downstream.
struct Dataset {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> x;
    std::vector<int> y;

    size_t size() const { return x.size(); }
    int dim() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
    size_t class_count(int label_idx) const {
        size_t n = 0;
        for (int v : y)
            if (v == label_idx) ++n;
        return n;
    }
};

// Builds a Dataset from labeled feature rows. When `label_order` is empty the
// labels found are used in sorted order.
inline Dataset make_dataset(const std::vector<FeatureVector>& rows,
                            std::vector<std::string> label_order = {}) {
    Dataset ds;
    if (label_order.empty()) {
        for (const auto& r : rows) label_order.push_back(r.label);
        std::sort(label_order.begin(), label_order.end());
        label_order.erase(std::unique(label_order.begin(), label_order.end()), label_order.end());
    }
    ds.labels = std::move(label_order);
    std::map<std::string, int> index;
    for (size_t i = 0; i < ds.labels.size(); ++i) index[ds.labels[i]] = static_cast<int>(i);

    ds.x.reserve(rows.size());
    ds.y.reserve(rows.size());
    for (const auto& r : rows) {
        const auto it = index.find(r.label);
        if (it == index.end())
            throw error("make_dataset: label '" + r.label + "' not in the configured set");
        if (!r.all_finite())
            throw error("make_dataset: non-finite feature value in row from " + r.source);
        ds.x.emplace_back(r.values.begin(), r.values.end());
        ds.y.push_back(it->second);
    }
    return ds;
}

}  // namespace scriptid
