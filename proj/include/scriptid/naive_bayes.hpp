#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scriptid/error.hpp"

namespace scriptid {

// Gaussian naive Bayes with per-class feature means/variances. Variances are
// floored so constant features cannot produce infinite densities.
struct NaiveBayesParams {
    std::vector<double> log_prior;
    std::vector<std::vector<double>> mean;  // [class][feature]
    std::vector<std::vector<double>> var;   // [class][feature]

    static constexpr double kMinVariance = 1e-9;
};

inline NaiveBayesParams naive_bayes_fit(const std::vector<std::vector<double>>& x,
                                        const std::vector<int>& y, int n_classes) {
    if (x.empty()) throw error("naive-bayes: empty training set");
    const size_t dim = x.front().size();
    NaiveBayesParams p;
    p.log_prior.assign(static_cast<size_t>(n_classes), 0.0);
    p.mean.assign(static_cast<size_t>(n_classes), std::vector<double>(dim, 0.0));
    p.var.assign(static_cast<size_t>(n_classes), std::vector<double>(dim, 0.0));
    std::vector<double> count(static_cast<size_t>(n_classes), 0.0);

    for (size_t i = 0; i < x.size(); ++i) {
        const auto c = static_cast<size_t>(y[i]);
        count[c] += 1.0;
        for (size_t j = 0; j < dim; ++j) p.mean[c][j] += x[i][j];
    }
    for (size_t c = 0; c < p.mean.size(); ++c) {
        if (count[c] == 0.0) throw error("naive-bayes: a class has no training samples");
        for (size_t j = 0; j < dim; ++j) p.mean[c][j] /= count[c];
    }
    for (size_t i = 0; i < x.size(); ++i) {
        const auto c = static_cast<size_t>(y[i]);
        for (size_t j = 0; j < dim; ++j) {
            const double d = x[i][j] - p.mean[c][j];
            p.var[c][j] += d * d;
        }
    }
    const double total = static_cast<double>(x.size());
    for (size_t c = 0; c < p.mean.size(); ++c) {
        p.log_prior[c] = std::log(count[c] / total);
        for (size_t j = 0; j < dim; ++j)
            p.var[c][j] = std::max(p.var[c][j] / count[c], NaiveBayesParams::kMinVariance);
    }
    return p;
}

// Posterior probabilities per class (they sum to one); log-sum-exp keeps the
// exponentials from underflowing on 54-dimensional inputs.
inline std::vector<double> naive_bayes_scores(const NaiveBayesParams& p,
                                              const std::vector<double>& x) {
    const size_t n_classes = p.mean.size();
    std::vector<double> logp(n_classes);
    constexpr double kLog2Pi = 1.8378770664093453;
    for (size_t c = 0; c < n_classes; ++c) {
        double lp = p.log_prior[c];
        for (size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - p.mean[c][j];
            lp -= 0.5 * (kLog2Pi + std::log(p.var[c][j]) + d * d / p.var[c][j]);
        }
        logp[c] = lp;
    }
    const double m = *std::max_element(logp.begin(), logp.end());
    double denom = 0.0;
    for (double v : logp) denom += std::exp(v - m);
    std::vector<double> post(n_classes);
    for (size_t c = 0; c < n_classes; ++c) post[c] = std::exp(logp[c] - m) / denom;
    return post;
}

}  // namespace scriptid
