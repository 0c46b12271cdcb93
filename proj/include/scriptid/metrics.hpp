#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scriptid/error.hpp"
#include "scriptid/model.hpp"

namespace scriptid {

struct ClassStats {
    std::string label;
    long actual_count = 0;
    long predicted_count = 0;
    long tp = 0, fp = 0, fn = 0, tn = 0;
    double tpr = 0.0, fpr = 0.0;
    double precision = 0.0, recall = 0.0, f_measure = 0.0;
    double mcc = 0.0;
    double auc = std::numeric_limits<double>::quiet_NaN();
};

// Everything derivable from a confusion matrix, plus the score-based figures
// (AUC, MAE, RMSE) when per-sample scores were available.
struct EvaluationReport {
    std::vector<std::string> labels;
    std::vector<std::vector<long>> matrix;  // [actual][predicted]
    long total = 0;
    long correct = 0;
    double accuracy = 0.0;
    double accuracy_low = 0.0, accuracy_high = 0.0;  // Wilson 95% bounds
    double kappa = 0.0;
    std::vector<ClassStats> per_class;
    double weighted_tpr = 0.0, weighted_fpr = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f = 0.0;
    double weighted_mcc = 0.0;
    double weighted_auc = std::numeric_limits<double>::quiet_NaN();
    double mae = std::numeric_limits<double>::quiet_NaN();
    double rmse = std::numeric_limits<double>::quiet_NaN();
    bool has_scores = false;
};

namespace detail {

constexpr double kZ95 = 1.959963984540054;

inline double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

inline std::pair<double, double> wilson_interval(long correct, long total, double z = kZ95) {
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(correct) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // At the degenerate proportions the bound is exactly the endpoint; keep it
    // free of rounding noise.
    const double lo = correct == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = correct == total ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

// Mann-Whitney statistic: rank all scores ascending, tied scores share the
// average rank. Returns NaN when either group is empty.
inline double rank_auc(const std::vector<double>& scores, const std::vector<char>& positive) {
    const size_t n = scores.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    long n_pos = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>((i + 1) + j);
        for (size_t k = i; k < j; ++k)
            if (positive[order[k]]) {
                rank_sum_pos += avg_rank;
                ++n_pos;
            }
        i = j;
    }
    const long n_neg = static_cast<long>(n) - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::numeric_limits<double>::quiet_NaN();
    const double np = static_cast<double>(n_pos);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

}  // namespace detail

inline EvaluationReport report_from_matrix(const std::vector<std::vector<long>>& matrix,
                                           const std::vector<std::string>& labels) {
    const size_t L = labels.size();
    if (L < 2) throw error("report: need at least two labels");
    if (matrix.size() != L) throw error("report: matrix row count does not match labels");
    for (const auto& row : matrix)
        if (row.size() != L) throw error("report: matrix is not square");

    EvaluationReport r;
    r.labels = labels;
    r.matrix = matrix;
    std::vector<long> row_sum(L, 0), col_sum(L, 0);
    for (size_t a = 0; a < L; ++a)
        for (size_t p = 0; p < L; ++p) {
            if (matrix[a][p] < 0) throw error("report: negative confusion count");
            r.total += matrix[a][p];
            row_sum[a] += matrix[a][p];
            col_sum[p] += matrix[a][p];
            if (a == p) r.correct += matrix[a][p];
        }
    if (r.total == 0) throw error("report: empty confusion matrix");
    r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
    std::tie(r.accuracy_low, r.accuracy_high) = detail::wilson_interval(r.correct, r.total);

    const double n = static_cast<double>(r.total);
    double pe = 0.0;
    for (size_t c = 0; c < L; ++c)
        pe += static_cast<double>(row_sum[c]) * static_cast<double>(col_sum[c]) / (n * n);
    // pe can only reach 1 when every sample sits in one diagonal cell, i.e.
    // perfect agreement.
    r.kappa = (1.0 - pe) < 1e-15 ? 1.0 : (r.accuracy - pe) / (1.0 - pe);

    r.per_class.resize(L);
    for (size_t c = 0; c < L; ++c) {
        ClassStats& s = r.per_class[c];
        s.label = labels[c];
        s.actual_count = row_sum[c];
        s.predicted_count = col_sum[c];
        s.tp = matrix[c][c];
        s.fn = row_sum[c] - s.tp;
        s.fp = col_sum[c] - s.tp;
        s.tn = r.total - s.tp - s.fn - s.fp;
        s.tpr = detail::safe_div(static_cast<double>(s.tp), static_cast<double>(s.tp + s.fn));
        s.fpr = detail::safe_div(static_cast<double>(s.fp), static_cast<double>(s.fp + s.tn));
        s.precision = detail::safe_div(static_cast<double>(s.tp), static_cast<double>(s.tp + s.fp));
        s.recall = s.tpr;
        s.f_measure = detail::safe_div(2.0 * s.precision * s.recall, s.precision + s.recall);
        const double denom = static_cast<double>(s.tp + s.fp) * static_cast<double>(s.tp + s.fn) *
                             static_cast<double>(s.tn + s.fp) * static_cast<double>(s.tn + s.fn);
        s.mcc = denom == 0.0
                    ? 0.0
                    : (static_cast<double>(s.tp) * static_cast<double>(s.tn) -
                       static_cast<double>(s.fp) * static_cast<double>(s.fn)) /
                          std::sqrt(denom);
    }
    for (size_t c = 0; c < L; ++c) {
        const double w = static_cast<double>(row_sum[c]) / n;
        r.weighted_tpr += w * r.per_class[c].tpr;
        r.weighted_fpr += w * r.per_class[c].fpr;
        r.weighted_precision += w * r.per_class[c].precision;
        r.weighted_recall += w * r.per_class[c].recall;
        r.weighted_f += w * r.per_class[c].f_measure;
        r.weighted_mcc += w * r.per_class[c].mcc;
    }
    return r;
}

// Builds the full report from per-sample outcomes. `scores` rows must align
// with `labels`; they are normalized to sum one before the residual figures.
inline EvaluationReport report_from_predictions(const std::vector<std::string>& labels,
                                                const std::vector<int>& actual,
                                                const std::vector<int>& predicted,
                                                const std::vector<std::vector<double>>& scores) {
    const size_t L = labels.size();
    const size_t N = actual.size();
    if (predicted.size() != N || scores.size() != N)
        throw error("report: prediction arrays have mismatched lengths");
    std::vector<std::vector<long>> matrix(L, std::vector<long>(L, 0));
    for (size_t i = 0; i < N; ++i) {
        if (actual[i] < 0 || actual[i] >= static_cast<int>(L) || predicted[i] < 0 ||
            predicted[i] >= static_cast<int>(L))
            throw error("report: label index out of range");
        ++matrix[static_cast<size_t>(actual[i])][static_cast<size_t>(predicted[i])];
    }
    EvaluationReport r = report_from_matrix(matrix, labels);
    r.has_scores = true;

    std::vector<std::vector<double>> norm(N, std::vector<double>(L, 0.0));
    for (size_t i = 0; i < N; ++i) {
        if (scores[i].size() != L) throw error("report: score row width does not match labels");
        double sum = 0.0;
        for (double v : scores[i]) sum += v;
        for (size_t c = 0; c < L; ++c)
            norm[i][c] = sum > 0.0 ? scores[i][c] / sum : 1.0 / static_cast<double>(L);
    }

    double abs_sum = 0.0, sq_sum = 0.0;
    for (size_t i = 0; i < N; ++i)
        for (size_t c = 0; c < L; ++c) {
            const double res = norm[i][c] - (actual[i] == static_cast<int>(c) ? 1.0 : 0.0);
            abs_sum += std::fabs(res);
            sq_sum += res * res;
        }
    const double terms = static_cast<double>(N) * static_cast<double>(L);
    r.mae = abs_sum / terms;
    r.rmse = std::sqrt(sq_sum / terms);

    double auc_weight = 0.0, auc_acc = 0.0;
    for (size_t c = 0; c < L; ++c) {
        std::vector<double> col(N);
        std::vector<char> pos(N);
        for (size_t i = 0; i < N; ++i) {
            col[i] = norm[i][c];
            pos[i] = actual[i] == static_cast<int>(c) ? 1 : 0;
        }
        r.per_class[c].auc = detail::rank_auc(col, pos);
        if (!std::isnan(r.per_class[c].auc)) {
            const double w = static_cast<double>(r.per_class[c].actual_count);
            auc_acc += w * r.per_class[c].auc;
            auc_weight += w;
        }
    }
    if (auc_weight > 0.0) r.weighted_auc = auc_acc / auc_weight;
    return r;
}

inline EvaluationReport evaluate(const TrainedModel& m, const std::vector<FeatureVector>& test) {
    if (test.empty()) throw error("evaluate: empty test set");
    std::vector<int> actual, predicted;
    std::vector<std::vector<double>> scores;
    for (const auto& row : test) {
        const auto it = std::find(m.labels.begin(), m.labels.end(), row.label);
        if (it == m.labels.end())
            throw error("evaluate: label '" + row.label + "' is not known to the model");
        actual.push_back(static_cast<int>(it - m.labels.begin()));
        const Prediction p = predict(m, row);
        predicted.push_back(p.label_index);
        scores.push_back(p.scores);
    }
    return report_from_predictions(m.labels, actual, predicted, scores);
}

// --- k-fold cross-validation -------------------------------------------------

struct CrossValResult {
    std::vector<EvaluationReport> folds;
    EvaluationReport pooled;  // all held-out predictions combined
    double mean_accuracy = 0.0;
    double stddev_accuracy = 0.0;
};

// Stratified fold assignment: each class is shuffled and dealt round-robin,
// with the starting fold rotating across classes so fold sizes stay balanced.
// Supports leave-one-out (folds == sample count).
inline std::vector<int> assign_folds(const Dataset& ds, int folds, uint64_t seed) {
    if (folds < 2) throw error("cross-validation: need at least two folds");
    if (static_cast<size_t>(folds) > ds.size())
        throw error("cross-validation: more folds than samples");
    std::vector<int> fold(ds.size(), -1);
    std::mt19937_64 rng(seed);
    int offset = 0;
    for (int c = 0; c < static_cast<int>(ds.labels.size()); ++c) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < ds.size(); ++i)
            if (ds.y[i] == c) idx.push_back(i);
        if (idx.size() < static_cast<size_t>(folds))
            warn("cross-validation: class '" + ds.labels[static_cast<size_t>(c)] + "' has " +
                 std::to_string(idx.size()) + " samples for " + std::to_string(folds) +
                 " folds; folds will not all contain it");
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t j = 0; j < idx.size(); ++j)
            fold[idx[j]] = static_cast<int>((offset + j) % static_cast<size_t>(folds));
        offset = static_cast<int>((offset + idx.size()) % static_cast<size_t>(folds));
    }
    std::vector<long> counts(static_cast<size_t>(folds), 0);
    for (int f : fold) ++counts[static_cast<size_t>(f)];
    for (int f = 0; f < folds; ++f)
        if (counts[static_cast<size_t>(f)] == 0)
            throw error("cross-validation: fold " + std::to_string(f) + " would be empty");
    return fold;
}

inline CrossValResult kfold_cross_validate(ModelKind kind, const std::vector<FeatureVector>& rows,
                                           int folds, uint64_t seed, const Hyperparams& hp = {},
                                           std::vector<std::string> label_order = {}) {
    const Dataset ds = make_dataset(rows, std::move(label_order));
    const std::vector<int> fold = assign_folds(ds, folds, seed);

    CrossValResult cv;
    std::vector<int> all_actual, all_predicted;
    std::vector<std::vector<double>> all_scores;
    for (int f = 0; f < folds; ++f) {
        std::vector<FeatureVector> train, test;
        for (size_t i = 0; i < rows.size(); ++i)
            (fold[i] == f ? test : train).push_back(rows[i]);
        const TrainedModel m = fit(kind, train, hp, ds.labels);
        std::vector<int> actual, predicted;
        std::vector<std::vector<double>> scores;
        for (const auto& row : test) {
            const auto it = std::find(ds.labels.begin(), ds.labels.end(), row.label);
            actual.push_back(static_cast<int>(it - ds.labels.begin()));
            const Prediction p = predict(m, row);
            predicted.push_back(p.label_index);
            scores.push_back(p.scores);
        }
        cv.folds.push_back(report_from_predictions(ds.labels, actual, predicted, scores));
        all_actual.insert(all_actual.end(), actual.begin(), actual.end());
        all_predicted.insert(all_predicted.end(), predicted.begin(), predicted.end());
        all_scores.insert(all_scores.end(), scores.begin(), scores.end());
    }
    cv.pooled = report_from_predictions(ds.labels, all_actual, all_predicted, all_scores);

    double mean = 0.0;
    for (const auto& r : cv.folds) mean += r.accuracy;
    mean /= static_cast<double>(cv.folds.size());
    double var = 0.0;
    for (const auto& r : cv.folds) {
        const double d = r.accuracy - mean;
        var += d * d;
    }
    cv.mean_accuracy = mean;
    cv.stddev_accuracy = std::sqrt(var / static_cast<double>(cv.folds.size()));
    return cv;
}

// --- rendering ----------------------------------------------------------------

namespace detail {

inline std::string fmt(double v, int prec = 4) {
    if (std::isnan(v)) return "n/a";
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

}  // namespace detail

inline std::string render_text(const EvaluationReport& r) {
    std::ostringstream os;
    const size_t L = r.labels.size();
    size_t w = 9;
    for (const auto& l : r.labels) w = std::max(w, l.size() + 2);

    os << "confusion matrix (rows = actual, columns = predicted)\n";
    os << std::setw(static_cast<int>(w)) << "";
    for (const auto& l : r.labels) os << std::setw(static_cast<int>(w)) << l;
    os << '\n';
    for (size_t a = 0; a < L; ++a) {
        os << std::setw(static_cast<int>(w)) << r.labels[a];
        for (size_t p = 0; p < L; ++p) os << std::setw(static_cast<int>(w)) << r.matrix[a][p];
        os << '\n';
    }
    os << '\n';
    os << "accuracy  " << detail::fmt(r.accuracy) << "  (" << r.correct << "/" << r.total
       << "), 95% interval [" << detail::fmt(r.accuracy_low) << ", "
       << detail::fmt(r.accuracy_high) << "]\n";
    os << "kappa     " << detail::fmt(r.kappa) << '\n';
    if (r.has_scores)
        os << "mae       " << detail::fmt(r.mae) << "\nrmse      " << detail::fmt(r.rmse) << '\n';
    os << '\n';
    os << std::setw(static_cast<int>(w)) << "class" << std::setw(8) << "n" << std::setw(9)
       << "tpr" << std::setw(9) << "fpr" << std::setw(9) << "prec" << std::setw(9) << "recall"
       << std::setw(9) << "f" << std::setw(9) << "mcc" << std::setw(9) << "auc" << '\n';
    for (const auto& s : r.per_class) {
        os << std::setw(static_cast<int>(w)) << s.label << std::setw(8) << s.actual_count
           << std::setw(9) << detail::fmt(s.tpr) << std::setw(9) << detail::fmt(s.fpr)
           << std::setw(9) << detail::fmt(s.precision) << std::setw(9) << detail::fmt(s.recall)
           << std::setw(9) << detail::fmt(s.f_measure) << std::setw(9) << detail::fmt(s.mcc)
           << std::setw(9) << detail::fmt(s.auc) << '\n';
    }
    os << std::setw(static_cast<int>(w)) << "weighted" << std::setw(8) << r.total << std::setw(9)
       << detail::fmt(r.weighted_tpr) << std::setw(9) << detail::fmt(r.weighted_fpr)
       << std::setw(9) << detail::fmt(r.weighted_precision) << std::setw(9)
       << detail::fmt(r.weighted_recall) << std::setw(9) << detail::fmt(r.weighted_f)
       << std::setw(9) << detail::fmt(r.weighted_mcc) << std::setw(9)
       << detail::fmt(r.weighted_auc) << '\n';
    return os.str();
}

inline nlohmann::json report_to_json(const EvaluationReport& r) {
    nlohmann::json j;
    j["labels"] = r.labels;
    j["matrix"] = r.matrix;
    j["total"] = r.total;
    j["correct"] = r.correct;
    j["accuracy"] = r.accuracy;
    j["accuracy_interval"] = {r.accuracy_low, r.accuracy_high};
    j["kappa"] = r.kappa;
    nlohmann::json per = nlohmann::json::array();
    for (const auto& s : r.per_class) {
        nlohmann::json e;
        e["label"] = s.label;
        e["actual_count"] = s.actual_count;
        e["tp"] = s.tp;
        e["fp"] = s.fp;
        e["fn"] = s.fn;
        e["tn"] = s.tn;
        e["tpr"] = s.tpr;
        e["fpr"] = s.fpr;
        e["precision"] = s.precision;
        e["recall"] = s.recall;
        e["f_measure"] = s.f_measure;
        e["mcc"] = s.mcc;
        if (!std::isnan(s.auc)) e["auc"] = s.auc;
        per.push_back(std::move(e));
    }
    j["per_class"] = std::move(per);
    j["weighted"] = {{"tpr", r.weighted_tpr},
                     {"fpr", r.weighted_fpr},
                     {"precision", r.weighted_precision},
                     {"recall", r.weighted_recall},
                     {"f_measure", r.weighted_f},
                     {"mcc", r.weighted_mcc}};
    if (!std::isnan(r.weighted_auc)) j["weighted"]["auc"] = r.weighted_auc;
    if (r.has_scores) {
        j["mae"] = r.mae;
        j["rmse"] = r.rmse;
    }
    return j;
}

}  // namespace scriptid
