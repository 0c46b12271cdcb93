#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scriptid/dataset.hpp"
#include "scriptid/error.hpp"
#include "scriptid/feature_vector.hpp"
#include "scriptid/knn.hpp"
#include "scriptid/naive_bayes.hpp"
#include "scriptid/standardize.hpp"
#include "scriptid/svm.hpp"

namespace scriptid {

enum class ModelKind { Knn, NaiveBayes, Svm };

inline std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Knn: return "knn";
        case ModelKind::NaiveBayes: return "naive-bayes";
        case ModelKind::Svm: return "svm";
    }
    return "unknown";
}

inline ModelKind model_kind_from_string(const std::string& s) {
    if (s == "knn") return ModelKind::Knn;
    if (s == "naive-bayes") return ModelKind::NaiveBayes;
    if (s == "svm") return ModelKind::Svm;
    throw model_error("unknown model kind '" + s + "'");
}

struct Hyperparams {
    int knn_k = 3;
    double svm_c = 10.0;
    KernelSpec svm_kernel{KernelSpec::Kind::Rbf, 0.0};
    double svm_tol = 1e-3;
    long svm_max_epochs = 2000;
};

// A fitted classifier: label set, the standardizer baked in at fit time, and
// the parameters of whichever family was trained.
struct TrainedModel {
    ModelKind kind = ModelKind::Knn;
    std::vector<std::string> labels;
    Standardizer standardizer;
    Hyperparams hyper;

    KnnParams knn;
    NaiveBayesParams nb;
    SvmParams svm;

    int n_classes() const { return static_cast<int>(labels.size()); }
};

struct Prediction {
    int label_index = -1;
    std::string label;
    std::vector<double> scores;
};

inline void validate_training_set(const Dataset& ds) {
    if (ds.labels.size() < 2) throw error("fit: need at least two classes");
    if (ds.x.empty()) throw error("fit: empty training set");
    const size_t dim = ds.x.front().size();
    for (const auto& r : ds.x)
        if (r.size() != dim) throw error("fit: inconsistent feature widths");
    std::set<int> seen(ds.y.begin(), ds.y.end());
    for (int c = 0; c < static_cast<int>(ds.labels.size()); ++c)
        if (!seen.count(c))
            throw error("fit: class '" + ds.labels[static_cast<size_t>(c)] +
                        "' has no training samples");
}

inline TrainedModel fit(ModelKind kind, const Dataset& ds, const Hyperparams& hp = {}) {
    validate_training_set(ds);
    TrainedModel m;
    m.kind = kind;
    m.labels = ds.labels;
    m.hyper = hp;
    m.standardizer = Standardizer::fit(ds.x);
    const auto xs = m.standardizer.apply_all(ds.x);
    switch (kind) {
        case ModelKind::Knn:
            m.knn = knn_fit(xs, ds.y, hp.knn_k);
            break;
        case ModelKind::NaiveBayes:
            m.nb = naive_bayes_fit(xs, ds.y, m.n_classes());
            break;
        case ModelKind::Svm:
            m.svm = svm_fit(xs, ds.y, m.n_classes(), hp.svm_c, hp.svm_kernel, hp.svm_tol,
                            hp.svm_max_epochs);
            m.hyper.svm_kernel = m.svm.kernel;  // gamma resolved
            break;
    }
    return m;
}

inline TrainedModel fit(ModelKind kind, const std::vector<FeatureVector>& rows,
                        const Hyperparams& hp = {}, std::vector<std::string> label_order = {}) {
    return fit(kind, make_dataset(rows, std::move(label_order)), hp);
}

inline Prediction predict(const TrainedModel& m, const std::vector<double>& raw) {
    const auto x = m.standardizer.apply(raw);
    Prediction p;
    switch (m.kind) {
        case ModelKind::Knn: p.scores = knn_scores(m.knn, x, m.n_classes()); break;
        case ModelKind::NaiveBayes: p.scores = naive_bayes_scores(m.nb, x); break;
        case ModelKind::Svm: p.scores = svm_scores(m.svm, x, m.n_classes()); break;
    }
    // First maximum wins, so exact ties land on the earliest configured label.
    p.label_index = static_cast<int>(
        std::max_element(p.scores.begin(), p.scores.end()) - p.scores.begin());
    p.label = m.labels[static_cast<size_t>(p.label_index)];
    return p;
}

inline Prediction predict(const TrainedModel& m, const FeatureVector& fv) {
    return predict(m, std::vector<double>(fv.values.begin(), fv.values.end()));
}

// --- persistence ------------------------------------------------------------

namespace detail {

constexpr const char* kModelMagic = "scriptid-model";
constexpr int kModelVersion = 1;

inline nlohmann::json kernel_to_json(const KernelSpec& k) {
    return {{"kind", k.kind == KernelSpec::Kind::Linear ? "linear" : "rbf"}, {"gamma", k.gamma}};
}

inline KernelSpec kernel_from_json(const nlohmann::json& j) {
    KernelSpec k;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear")
        k.kind = KernelSpec::Kind::Linear;
    else if (kind == "rbf")
        k.kind = KernelSpec::Kind::Rbf;
    else
        throw model_error("unknown kernel kind '" + kind + "'");
    k.gamma = j.at("gamma").get<double>();
    return k;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TrainedModel& m) {
    nlohmann::json j;
    j["magic"] = detail::kModelMagic;
    j["version"] = detail::kModelVersion;
    j["kind"] = to_string(m.kind);
    j["labels"] = m.labels;
    j["standardizer"] = {{"mean", m.standardizer.mean}, {"stddev", m.standardizer.stddev}};
    j["hyper"] = {{"knn_k", m.hyper.knn_k},
                  {"svm_c", m.hyper.svm_c},
                  {"svm_kernel", detail::kernel_to_json(m.hyper.svm_kernel)},
                  {"svm_tol", m.hyper.svm_tol},
                  {"svm_max_epochs", m.hyper.svm_max_epochs}};
    nlohmann::json params;
    switch (m.kind) {
        case ModelKind::Knn:
            params = {{"k", m.knn.k}, {"points", m.knn.points}, {"y", m.knn.y}};
            break;
        case ModelKind::NaiveBayes:
            params = {{"log_prior", m.nb.log_prior}, {"mean", m.nb.mean}, {"var", m.nb.var}};
            break;
        case ModelKind::Svm: {
            nlohmann::json pairs = nlohmann::json::array();
            for (const auto& pr : m.svm.pairs)
                pairs.push_back({{"a", pr.a},
                                 {"b", pr.b},
                                 {"sv", pr.machine.sv},
                                 {"coef", pr.machine.coef},
                                 {"bias", pr.machine.bias}});
            params = {{"kernel", detail::kernel_to_json(m.svm.kernel)},
                      {"c", m.svm.c},
                      {"pairs", std::move(pairs)}};
            break;
        }
    }
    j["params"] = std::move(params);
    return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("magic") ||
            j.at("magic").get<std::string>() != detail::kModelMagic)
            throw model_error("not a scriptid model file");
        const int version = j.at("version").get<int>();
        if (version > detail::kModelVersion)
            throw model_error("model version " + std::to_string(version) +
                              " is newer than this build supports");
        TrainedModel m;
        m.kind = model_kind_from_string(j.at("kind").get<std::string>());
        m.labels = j.at("labels").get<std::vector<std::string>>();
        if (m.labels.size() < 2) throw model_error("model has fewer than two labels");
        const auto& st = j.at("standardizer");
        m.standardizer.mean = st.at("mean").get<std::vector<double>>();
        m.standardizer.stddev = st.at("stddev").get<std::vector<double>>();
        const auto& hy = j.at("hyper");
        m.hyper.knn_k = hy.at("knn_k").get<int>();
        m.hyper.svm_c = hy.at("svm_c").get<double>();
        m.hyper.svm_kernel = detail::kernel_from_json(hy.at("svm_kernel"));
        m.hyper.svm_tol = hy.at("svm_tol").get<double>();
        m.hyper.svm_max_epochs = hy.at("svm_max_epochs").get<long>();
        const auto& params = j.at("params");
        switch (m.kind) {
            case ModelKind::Knn:
                m.knn.k = params.at("k").get<int>();
                m.knn.points = params.at("points").get<std::vector<std::vector<double>>>();
                m.knn.y = params.at("y").get<std::vector<int>>();
                break;
            case ModelKind::NaiveBayes:
                m.nb.log_prior = params.at("log_prior").get<std::vector<double>>();
                m.nb.mean = params.at("mean").get<std::vector<std::vector<double>>>();
                m.nb.var = params.at("var").get<std::vector<std::vector<double>>>();
                break;
            case ModelKind::Svm: {
                m.svm.kernel = detail::kernel_from_json(params.at("kernel"));
                m.svm.c = params.at("c").get<double>();
                for (const auto& pj : params.at("pairs")) {
                    SvmParams::Pair pr;
                    pr.a = pj.at("a").get<int>();
                    pr.b = pj.at("b").get<int>();
                    pr.machine.sv = pj.at("sv").get<std::vector<std::vector<double>>>();
                    pr.machine.coef = pj.at("coef").get<std::vector<double>>();
                    pr.machine.bias = pj.at("bias").get<double>();
                    m.svm.pairs.push_back(std::move(pr));
                }
                break;
            }
        }
        return m;
    } catch (const model_error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw model_error(std::string("malformed model file: ") + e.what());
    }
}

inline void save_model(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open model file for writing: " + path);
    out << model_to_json(m).dump(2) << '\n';
    if (!out) throw io_error("failed while writing model file: " + path);
}

inline TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw model_error("malformed model file '" + path + "': " + e.what());
    }
    return model_from_json(j);
}

}  // namespace scriptid
