#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scriptid/error.hpp"

namespace scriptid {

struct KernelSpec {
    enum class Kind { Linear, Rbf };
    Kind kind = Kind::Rbf;
    double gamma = 0.0;  // 0 means 1/dim, resolved at fit time
};

inline double kernel_eval(const KernelSpec& k, const std::vector<double>& a,
                          const std::vector<double>& b) {
    if (k.kind == KernelSpec::Kind::Linear) {
        double dot = 0.0;
        for (size_t j = 0; j < a.size(); ++j) dot += a[j] * b[j];
        return dot;
    }
    double d2 = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        d2 += d * d;
    }
    return std::exp(-k.gamma * d2);
}

// One binary max-margin classifier: decision value f(x) = sum coef_i K(sv_i, x) + bias
// with coef_i = alpha_i * y_i over the support vectors.
struct BinarySvm {
    std::vector<std::vector<double>> sv;
    std::vector<double> coef;
    double bias = 0.0;
};

inline double svm_decision(const BinarySvm& m, const KernelSpec& k, const std::vector<double>& x) {
    double f = m.bias;
    for (size_t i = 0; i < m.sv.size(); ++i) f += m.coef[i] * kernel_eval(k, m.sv[i], x);
    return f;
}

// Full dual solution as produced by the optimizer, before support vectors are
// compressed out. Kept separate so the box/equality constraints on alpha can
// be inspected directly.
struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;
    bool converged = true;
    long epochs = 0;
};

namespace detail {

// Sequential minimal optimization over the dual. Everything about the
// working-pair choice is tie-broken by index, so a given input always yields
// the same solution.
class SmoSolver {
  public:
    SmoSolver(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double c,
              const KernelSpec& kernel, double tol)
        : x_(x), y_(y), c_(c), kernel_(kernel), tol_(tol), n_(x.size()) {
        gram_.assign(n_ * n_, 0.0);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = i; j < n_; ++j) {
                const double v = kernel_eval(kernel_, x_[i], x_[j]);
                gram_[i * n_ + j] = v;
                gram_[j * n_ + i] = v;
            }
        alpha_.assign(n_, 0.0);
        err_.resize(n_);
        for (size_t i = 0; i < n_; ++i) err_[i] = -static_cast<double>(y_[i]);
    }

    SmoResult solve(long max_epochs) {
        SmoResult result;
        bool examine_all = true;
        long epochs = 0;
        int changed = 0;
        while (changed > 0 || examine_all) {
            if (++epochs > max_epochs) {
                result.converged = false;
                break;
            }
            changed = 0;
            if (examine_all) {
                for (size_t i = 0; i < n_; ++i) changed += examine(i);
                examine_all = false;
            } else {
                for (size_t i = 0; i < n_; ++i)
                    if (is_free(alpha_[i])) changed += examine(i);
                if (changed == 0) examine_all = true;
            }
        }
        result.alpha = alpha_;
        result.bias = bias_;
        result.epochs = epochs;
        return result;
    }

  private:
    double k(size_t i, size_t j) const { return gram_[i * n_ + j]; }
    bool is_free(double a) const { return a > 0.0 && a < c_; }

    int examine(size_t i2) {
        const double y2 = y_[i2];
        const double a2 = alpha_[i2];
        const double e2 = err_[i2];
        const double r2 = e2 * y2;
        const bool violates = (r2 < -tol_ && a2 < c_) || (r2 > tol_ && a2 > 0.0);
        if (!violates) return 0;

        // First choice: the free point with the largest |E1 - E2| step.
        size_t best = n_;
        double best_gap = -1.0;
        for (size_t i = 0; i < n_; ++i) {
            if (i == i2 || !is_free(alpha_[i])) continue;
            const double gap = std::fabs(err_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, i2)) return 1;
        // Fall back to scanning free points, then everything, in index order.
        for (size_t i = 0; i < n_; ++i)
            if (i != i2 && is_free(alpha_[i]) && take_step(i, i2)) return 1;
        for (size_t i = 0; i < n_; ++i)
            if (i != i2 && !is_free(alpha_[i]) && take_step(i, i2)) return 1;
        return 0;
    }

    bool take_step(size_t i1, size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = err_[i1], e2 = err_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c_, c_ + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c_);
            hi = std::min(c_, a1 + a2);
        }
        if (hi - lo < 1e-12) return false;

        const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2new;
        if (eta > 0.0) {
            a2new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Degenerate curvature: evaluate the objective at both clip ends.
            const double f1 = y1 * (e1 - bias_) - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * (e2 - bias_) - a2 * k22 - s * a1 * k12;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (obj_lo < obj_hi - 1e-12)
                a2new = lo;
            else if (obj_lo > obj_hi + 1e-12)
                a2new = hi;
            else
                return false;
        }
        if (std::fabs(a2new - a2) < 1e-9 * (a2new + a2 + 1e-9)) return false;

        const double a1new = std::clamp(a1 + s * (a2 - a2new), 0.0, c_);
        const double d1 = y1 * (a1new - a1);
        const double d2 = y2 * (a2new - a2);

        const double b1 = -(e1 + d1 * k11 + d2 * k12);
        const double b2 = -(e2 + d1 * k12 + d2 * k22);
        double db;
        if (is_free(a1new))
            db = b1;
        else if (is_free(a2new))
            db = b2;
        else
            db = 0.5 * (b1 + b2);

        alpha_[i1] = a1new;
        alpha_[i2] = a2new;
        bias_ += db;
        for (size_t i = 0; i < n_; ++i) err_[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;
        return true;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    double c_;
    KernelSpec kernel_;
    double tol_;
    size_t n_;
    std::vector<double> gram_;
    std::vector<double> alpha_;
    std::vector<double> err_;
    double bias_ = 0.0;
};

// Maps a decision margin into (0, 1) monotonically without the floating-point
// saturation a logistic would hit on large sums.
inline double squash_margin(double m) { return 0.5 + 0.5 * m / (1.0 + std::fabs(m)); }

}  // namespace detail

// Trains one binary classifier on labels y in {-1, +1}.
inline SmoResult smo_train(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                           double c, const KernelSpec& kernel, double tol = 1e-3,
                           long max_epochs = 2000) {
    if (x.empty()) throw error("svm: empty training set");
    if (x.size() != y.size()) throw error("svm: sample/label count mismatch");
    for (int v : y)
        if (v != 1 && v != -1) throw error("svm: binary labels must be +1 or -1");
    detail::SmoSolver solver(x, y, c, kernel, tol);
    SmoResult r = solver.solve(max_epochs);
    if (!r.converged) warn("svm: optimizer hit the epoch limit before meeting the tolerance");
    return r;
}

inline BinarySvm compress_svm(const SmoResult& r, const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y) {
    BinarySvm m;
    m.bias = r.bias;
    for (size_t i = 0; i < x.size(); ++i) {
        if (r.alpha[i] > 0.0) {
            m.sv.push_back(x[i]);
            m.coef.push_back(r.alpha[i] * static_cast<double>(y[i]));
        }
    }
    return m;
}

// One-vs-one multiclass wrapper: one binary machine per unordered class pair.
struct SvmParams {
    struct Pair {
        int a = 0;
        int b = 0;
        BinarySvm machine;
    };
    KernelSpec kernel;
    double c = 10.0;
    std::vector<Pair> pairs;
};

inline SvmParams svm_fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         int n_classes, double c, KernelSpec kernel, double tol = 1e-3,
                         long max_epochs = 2000) {
    if (kernel.gamma <= 0.0 && kernel.kind == KernelSpec::Kind::Rbf) {
        if (x.empty()) throw error("svm: empty training set");
        kernel.gamma = 1.0 / static_cast<double>(x.front().size());
    }
    SvmParams p;
    p.kernel = kernel;
    p.c = c;
    for (int a = 0; a < n_classes; ++a) {
        for (int b = a + 1; b < n_classes; ++b) {
            std::vector<std::vector<double>> xs;
            std::vector<int> ys;
            for (size_t i = 0; i < x.size(); ++i) {
                if (y[i] == a) {
                    xs.push_back(x[i]);
                    ys.push_back(1);
                } else if (y[i] == b) {
                    xs.push_back(x[i]);
                    ys.push_back(-1);
                }
            }
            if (xs.empty()) throw error("svm: class pair has no training samples");
            const SmoResult r = smo_train(xs, ys, c, kernel, tol, max_epochs);
            p.pairs.push_back({a, b, compress_svm(r, xs, ys)});
        }
    }
    return p;
}

// Scores are pairwise vote counts plus a squashed margin sum, so the vote
// winner always carries the largest score and equal-vote classes are ordered
// by their accumulated decision values.
inline std::vector<double> svm_scores(const SvmParams& p, const std::vector<double>& x,
                                      int n_classes) {
    std::vector<double> votes(static_cast<size_t>(n_classes), 0.0);
    std::vector<double> margin(static_cast<size_t>(n_classes), 0.0);
    for (const auto& pr : p.pairs) {
        const double f = svm_decision(pr.machine, p.kernel, x);
        if (f > 0.0)
            votes[static_cast<size_t>(pr.a)] += 1.0;
        else
            votes[static_cast<size_t>(pr.b)] += 1.0;
        margin[static_cast<size_t>(pr.a)] += f;
        margin[static_cast<size_t>(pr.b)] -= f;
    }
    std::vector<double> scores(static_cast<size_t>(n_classes));
    for (size_t cidx = 0; cidx < scores.size(); ++cidx)
        scores[cidx] = votes[cidx] + detail::squash_margin(margin[cidx]);
    return scores;
}

}  // namespace scriptid
