#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scriptid/error.hpp"
#include "scriptid/feature_csv.hpp"
#include "scriptid/feature_vector.hpp"
#include "scriptid/image_io.hpp"

namespace scriptid {

struct CorpusItem {
    std::string path;
    std::string label;
};

struct Corpus {
    std::vector<CorpusItem> items;
    std::vector<std::string> labels;  // sorted unique
};

namespace detail {

inline bool is_image_file(const std::filesystem::path& p) {
    const std::string ext = p.extension().string();
    return ext == ".pgm" || ext == ".png";
}

}  // namespace detail

// Loads a corpus rooted at `root`. If a `manifest.csv` (columns: path,label
// and optionally seed) is present it defines the items and the label set;
// otherwise one subdirectory per label is expected, and labels must come from
// the default script set unless `allow_new_labels` is set.
inline Corpus load_corpus(const std::string& root, bool allow_new_labels = false) {
    namespace fs = std::filesystem;
    const fs::path base(root);
    if (!fs::is_directory(base)) throw io_error("corpus root is not a directory: " + root);

    Corpus corpus;
    const fs::path manifest = base / "manifest.csv";
    if (fs::is_regular_file(manifest)) {
        std::ifstream in(manifest);
        if (!in) throw io_error("cannot open manifest: " + manifest.string());
        std::string line;
        if (!std::getline(in, line)) throw parse_error("empty manifest: " + manifest.string());
        auto header = detail::csv_split(line, 1);
        if (header.size() < 2 || header[0] != "path" || header[1] != "label")
            throw parse_error("manifest header must start with 'path,label': " +
                              manifest.string());
        int line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cells = detail::csv_split(line, line_no);
            if (cells.size() < 2)
                throw parse_error("manifest line " + std::to_string(line_no) +
                                  " is missing columns: " + manifest.string());
            const fs::path item = base / cells[0];
            if (!fs::is_regular_file(item))
                throw io_error("manifest names a missing file: " + item.string());
            corpus.items.push_back({item.string(), cells[1]});
        }
    } else {
        std::vector<fs::path> class_dirs;
        for (const auto& entry : fs::directory_iterator(base))
            if (entry.is_directory()) class_dirs.push_back(entry.path());
        std::sort(class_dirs.begin(), class_dirs.end());
        const auto known = default_script_labels();
        for (const auto& dir : class_dirs) {
            const std::string label = dir.filename().string();
            if (!allow_new_labels &&
                std::find(known.begin(), known.end(), label) == known.end())
                throw error("unknown script directory '" + label +
                            "' (pass allow-new-labels to accept it)");
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(dir))
                if (entry.is_regular_file() && detail::is_image_file(entry.path()))
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty()) {
                warn("corpus: label directory '" + label + "' contains no images");
                continue;
            }
            for (const auto& f : files) corpus.items.push_back({f.string(), label});
        }
    }
    if (corpus.items.empty()) throw error("corpus at " + root + " contains no images");
    std::set<std::string> labels;
    for (const auto& it : corpus.items) labels.insert(it.label);
    corpus.labels.assign(labels.begin(), labels.end());
    return corpus;
}

// Runs the full feature pipeline over every corpus image.
inline std::vector<FeatureVector> extract_corpus_features(const Corpus& corpus,
                                                          const ExtractConfig& cfg = {}) {
    std::vector<FeatureVector> rows;
    rows.reserve(corpus.items.size());
    for (const auto& item : corpus.items) {
        const GrayImage img = read_image(item.path);
        FeatureVector fv = extract_features(img, cfg);
        fv.label = item.label;
        fv.source = item.path;
        rows.push_back(std::move(fv));
    }
    return rows;
}

// Stratified train/holdout split over per-row labels. Each class contributes
// round(fraction * size) training rows, clamped so both sides stay nonempty.
inline std::pair<std::vector<size_t>, std::vector<size_t>> stratified_split(
    const std::vector<std::string>& row_labels, double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw error("split: training fraction must be strictly between 0 and 1");
    std::vector<std::string> labels(row_labels);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::vector<size_t> train_idx, held_idx;
    std::mt19937_64 rng(seed);
    for (const auto& label : labels) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < row_labels.size(); ++i)
            if (row_labels[i] == label) idx.push_back(i);
        if (idx.size() < 2)
            throw error("split: class '" + label + "' needs at least two samples");
        std::shuffle(idx.begin(), idx.end(), rng);
        const auto size = static_cast<double>(idx.size());
        auto n_train = static_cast<size_t>(std::llround(train_fraction * size));
        n_train = std::clamp<size_t>(n_train, 1, idx.size() - 1);
        for (size_t j = 0; j < idx.size(); ++j)
            (j < n_train ? train_idx : held_idx).push_back(idx[j]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(held_idx.begin(), held_idx.end());
    return {train_idx, held_idx};
}

inline std::pair<std::vector<FeatureVector>, std::vector<FeatureVector>> split_features(
    const std::vector<FeatureVector>& rows, double train_fraction, uint64_t seed) {
    std::vector<std::string> labels;
    labels.reserve(rows.size());
    for (const auto& r : rows) labels.push_back(r.label);
    const auto [train_idx, held_idx] = stratified_split(labels, train_fraction, seed);
    std::vector<FeatureVector> train, held;
    for (size_t i : train_idx) train.push_back(rows[i]);
    for (size_t i : held_idx) held.push_back(rows[i]);
    return {train, held};
}

}  // namespace scriptid
