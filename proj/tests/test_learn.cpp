#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <vector>

#include <scriptid/dataset.hpp>
#include <scriptid/knn.hpp>
#include <scriptid/model.hpp>
#include <scriptid/naive_bayes.hpp>
#include <scriptid/standardize.hpp>
#include <scriptid/svm.hpp>

#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace scriptid;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "scriptid_learn_tests";
    fs::create_directories(dir);
    return dir / name;
}

// Spherical Gaussian clusters around the given centers, same draw order every
// time for a fixed seed.
Dataset make_blobs(const std::vector<std::vector<double>>& centers, int per_class, double noise,
                   std::mt19937_64& rng, const std::vector<std::string>& labels) {
    std::normal_distribution<double> n(0.0, noise);
    Dataset ds;
    ds.labels = labels;
    for (size_t c = 0; c < centers.size(); ++c)
        for (int i = 0; i < per_class; ++i) {
            std::vector<double> p(centers[c].size());
            for (size_t j = 0; j < p.size(); ++j) p[j] = centers[c][j] + n(rng);
            ds.x.push_back(std::move(p));
            ds.y.push_back(static_cast<int>(c));
        }
    return ds;
}

std::vector<std::vector<double>> spread_centers(int n_classes, int dim, double gap) {
    std::vector<std::vector<double>> centers(static_cast<size_t>(n_classes),
                                             std::vector<double>(static_cast<size_t>(dim), 0.0));
    for (int c = 0; c < n_classes; ++c) {
        centers[static_cast<size_t>(c)][static_cast<size_t>(c % dim)] = gap;
        centers[static_cast<size_t>(c)][static_cast<size_t>((c + 1) % dim)] = c % 2 ? gap : -gap;
    }
    return centers;
}

double training_accuracy(const TrainedModel& m, const Dataset& ds) {
    int hit = 0;
    for (size_t i = 0; i < ds.size(); ++i)
        if (predict(m, ds.x[i]).label_index == ds.y[i]) ++hit;
    return static_cast<double>(hit) / static_cast<double>(ds.size());
}

}  // namespace

TEST_CASE("standardizer centers and scales, constant columns pass through") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(5.0, 3.0);
    std::vector<std::vector<double>> rows(200, std::vector<double>(3));
    for (auto& r : rows) {
        r[0] = n(rng);
        r[1] = 100.0 * n(rng) - 40.0;
        r[2] = 42.0;  // constant
    }
    const Standardizer s = Standardizer::fit(rows);
    CHECK(s.stddev[2] == 1.0);

    const auto z = s.apply_all(rows);
    for (int j = 0; j < 3; ++j) {
        double mean = 0.0;
        for (const auto& r : z) mean += r[static_cast<size_t>(j)];
        mean /= static_cast<double>(z.size());
        double var = 0.0;
        for (const auto& r : z) var += (r[static_cast<size_t>(j)] - mean) * (r[static_cast<size_t>(j)] - mean);
        var /= static_cast<double>(z.size());
        CHECK(std::fabs(mean) < 1e-9);
        if (j < 2) CHECK(var == Catch::Approx(1.0).margin(1e-9));
        else CHECK(var == Catch::Approx(0.0).margin(1e-12));
    }

    CHECK_THROWS_AS(Standardizer::fit({}), error);
    CHECK_THROWS_AS(s.apply({1.0, 2.0}), error);
}

TEST_CASE("nearest neighbour recovers its own training points at k=1") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<std::vector<double>> x(40, std::vector<double>(6));
    std::vector<int> y(40);
    for (size_t i = 0; i < x.size(); ++i) {
        for (auto& v : x[i]) v = u(rng);
        y[i] = static_cast<int>(i % 4);
    }
    const KnnParams p = knn_fit(x, y, 1);
    for (size_t i = 0; i < x.size(); ++i) {
        const auto scores = knn_scores(p, x[i], 4);
        const int got = static_cast<int>(std::max_element(scores.begin(), scores.end()) -
                                         scores.begin());
        CHECK(got == y[i]);
    }
    CHECK_THROWS_AS(knn_fit(x, y, 0), error);
}

TEST_CASE("k=3 voting agrees with a brute-force reference") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<std::vector<double>> x(60, std::vector<double>(5));
    std::vector<int> y(60);
    for (size_t i = 0; i < x.size(); ++i) {
        for (auto& v : x[i]) v = u(rng);
        y[i] = static_cast<int>(rng() % 3);
    }
    const KnnParams p = knn_fit(x, y, 3);
    for (int probe = 0; probe < 50; ++probe) {
        std::vector<double> q(5);
        for (auto& v : q) v = u(rng);
        const auto scores = knn_scores(p, q, 3);
        const int got = static_cast<int>(std::max_element(scores.begin(), scores.end()) -
                                         scores.begin());
        CHECK(got == oracles::brute_knn_label(x, y, q, 3, 3));
    }
}

TEST_CASE("exact vote ties fall to the earliest label") {
    Dataset ds;
    ds.labels = {"alpha", "beta"};
    ds.x = {{-1.0, 0.0}, {1.0, 0.0}};
    ds.y = {0, 1};
    Hyperparams hp;
    hp.knn_k = 2;
    const TrainedModel m = fit(ModelKind::Knn, ds, hp);
    const Prediction p = predict(m, std::vector<double>{0.0, 0.0});
    CHECK(p.scores[0] == p.scores[1]);
    CHECK(p.label == "alpha");
}

TEST_CASE("linear machine separates a separable quartet with zero error") {
    const std::vector<std::vector<double>> x = {{1.0, 1.0}, {2.0, 0.5}, {-1.0, -1.5}, {-2.0, -0.5}};
    const std::vector<int> y = {1, 1, -1, -1};
    const KernelSpec kernel{KernelSpec::Kind::Linear, 0.0};
    const SmoResult r = smo_train(x, y, 10.0, kernel);
    REQUIRE(r.converged);
    const BinarySvm m = compress_svm(r, x, y);
    REQUIRE_FALSE(m.sv.empty());
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(svm_decision(m, kernel, x[i]) * y[i] > 0.0);
}

TEST_CASE("dual solutions respect the box and equality constraints") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n(0.0, 0.8);
    const double c = 10.0;
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (int i = 0; i < 20; ++i) {
            x.push_back({3.0 + n(rng), 3.0 + n(rng), n(rng), n(rng)});
            y.push_back(1);
            x.push_back({-3.0 + n(rng), -3.0 + n(rng), n(rng), n(rng)});
            y.push_back(-1);
        }
        const KernelSpec kernel{KernelSpec::Kind::Rbf, 0.25};
        const SmoResult r = smo_train(x, y, c, kernel);
        REQUIRE(r.converged);

        double sum_ay = 0.0;
        for (size_t i = 0; i < r.alpha.size(); ++i) {
            CHECK(r.alpha[i] >= 0.0);
            CHECK(r.alpha[i] <= c);
            sum_ay += r.alpha[i] * y[i];
        }
        CHECK(std::fabs(sum_ay) <= 1e-6);

        const BinarySvm m = compress_svm(r, x, y);
        for (size_t i = 0; i < x.size(); ++i)
            CHECK(svm_decision(m, kernel, x[i]) * y[i] > 0.0);
    }
}

TEST_CASE("all three families learn well-separated clusters") {
    std::mt19937_64 rng(47);
    const auto centers = spread_centers(3, 6, 8.0);
    const std::vector<std::string> labels = {"one", "two", "three"};
    const Dataset train = make_blobs(centers, 30, 1.0, rng, labels);
    const Dataset probe = make_blobs(centers, 15, 1.0, rng, labels);

    const TrainedModel svm = fit(ModelKind::Svm, train);
    CHECK(svm.svm.kernel.gamma == Catch::Approx(1.0 / 6.0));
    CHECK(training_accuracy(svm, train) == 1.0);
    CHECK(training_accuracy(svm, probe) >= 0.95);

    const TrainedModel nb = fit(ModelKind::NaiveBayes, train);
    CHECK(training_accuracy(nb, train) >= 0.95);
    CHECK(training_accuracy(nb, probe) >= 0.95);

    const TrainedModel knn = fit(ModelKind::Knn, train);
    CHECK(training_accuracy(knn, probe) >= 0.95);

    // sanity floor: the trained families should not lose to plain centroids
    int centroid_hits = 0;
    for (size_t i = 0; i < probe.size(); ++i)
        if (oracles::nearest_centroid_label(train.x, train.y, probe.x[i], 3) == probe.y[i])
            ++centroid_hits;
    const double floor = static_cast<double>(centroid_hits) / static_cast<double>(probe.size());
    CHECK(training_accuracy(svm, probe) >= floor - 1e-12);
}

TEST_CASE("posteriors from the gaussian family sum to one") {
    std::mt19937_64 rng(53);
    const Dataset ds = make_blobs(spread_centers(4, 5, 4.0), 12, 1.2, rng,
                                  {"a", "b", "c", "d"});
    const TrainedModel m = fit(ModelKind::NaiveBayes, ds);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> q(5);
        for (auto& v : q) v = u(rng);
        const auto scores = predict(m, q).scores;
        double total = 0.0;
        for (double s : scores) {
            CHECK(s >= 0.0);
            total += s;
        }
        CHECK(total == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("rescaling a column by a power of two changes nothing downstream") {
    std::mt19937_64 rng(61);
    Dataset base = make_blobs(spread_centers(3, 6, 6.0), 20, 1.0, rng, {"p", "q", "r"});
    Dataset scaled = base;
    for (auto& row : scaled.x) {
        row[1] = std::ldexp(row[1], 7);
        row[4] = std::ldexp(row[4], -3);
    }

    std::uniform_real_distribution<double> u(-8.0, 8.0);
    std::vector<std::vector<double>> probes(30, std::vector<double>(6));
    for (auto& p : probes)
        for (auto& v : p) v = u(rng);

    for (const ModelKind kind : {ModelKind::Knn, ModelKind::Svm}) {
        const TrainedModel a = fit(kind, base);
        const TrainedModel b = fit(kind, scaled);
        for (const auto& p : probes) {
            std::vector<double> ps = p;
            ps[1] = std::ldexp(ps[1], 7);
            ps[4] = std::ldexp(ps[4], -3);
            const Prediction pa = predict(a, p);
            const Prediction pb = predict(b, ps);
            CHECK(pa.label_index == pb.label_index);
            CHECK(pa.scores == pb.scores);
        }
    }
}

TEST_CASE("models survive a save/load round trip bit for bit") {
    std::mt19937_64 rng(71);
    const Dataset ds = make_blobs(spread_centers(3, 6, 6.0), 15, 1.0, rng, {"x", "y", "z"});
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    std::vector<std::vector<double>> probes(100, std::vector<double>(6));
    for (auto& p : probes)
        for (auto& v : p) v = u(rng);

    for (const ModelKind kind : {ModelKind::Knn, ModelKind::NaiveBayes, ModelKind::Svm}) {
        const TrainedModel m = fit(kind, ds);
        const auto path = temp_file("model_" + to_string(kind) + ".json");
        save_model(m, path.string());
        const TrainedModel back = load_model(path.string());
        CHECK(back.labels == m.labels);
        CHECK(back.kind == m.kind);
        for (const auto& p : probes) {
            const Prediction before = predict(m, p);
            const Prediction after = predict(back, p);
            CHECK(before.label_index == after.label_index);
            CHECK(before.scores == after.scores);
        }
    }
}

TEST_CASE("damaged or foreign model files are rejected as model errors") {
    std::mt19937_64 rng(83);
    const Dataset ds = make_blobs(spread_centers(2, 4, 6.0), 8, 1.0, rng, {"m", "n"});
    const TrainedModel m = fit(ModelKind::Knn, ds);
    const auto good = temp_file("good.json");
    save_model(m, good.string());

    SECTION("missing file") {
        CHECK_THROWS_AS(load_model(temp_file("nope.json").string()), io_error);
    }
    SECTION("garbage content") {
        const auto path = temp_file("garbage.json");
        std::ofstream(path) << "this is not json {{{";
        CHECK_THROWS_AS(load_model(path.string()), model_error);
    }
    SECTION("truncated json") {
        std::ifstream in(good);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto path = temp_file("trunc.json");
        std::ofstream(path) << text.substr(0, text.size() / 2);
        CHECK_THROWS_AS(load_model(path.string()), model_error);
    }
    SECTION("wrong magic") {
        nlohmann::json j = model_to_json(m);
        j["magic"] = "someone-elses-format";
        const auto path = temp_file("magic.json");
        std::ofstream(path) << j.dump();
        CHECK_THROWS_AS(load_model(path.string()), model_error);
    }
    SECTION("version from the future") {
        nlohmann::json j = model_to_json(m);
        j["version"] = 99;
        const auto path = temp_file("future.json");
        std::ofstream(path) << j.dump();
        CHECK_THROWS_WITH(load_model(path.string()),
                          Catch::Matchers::ContainsSubstring("version 99"));
    }
    SECTION("unknown kind") {
        nlohmann::json j = model_to_json(m);
        j["kind"] = "decision-forest";
        const auto path = temp_file("kind.json");
        std::ofstream(path) << j.dump();
        CHECK_THROWS_AS(load_model(path.string()), model_error);
    }
}

TEST_CASE("fit rejects degenerate training sets") {
    SECTION("fewer than two classes") {
        Dataset ds;
        ds.labels = {"only"};
        ds.x = {{1.0}, {2.0}};
        ds.y = {0, 0};
        CHECK_THROWS_AS(fit(ModelKind::Knn, ds), error);
    }
    SECTION("a declared class with no samples") {
        Dataset ds;
        ds.labels = {"a", "b", "c"};
        ds.x = {{1.0}, {2.0}};
        ds.y = {0, 1};
        CHECK_THROWS_WITH(fit(ModelKind::Knn, ds), Catch::Matchers::ContainsSubstring("'c'"));
    }
    SECTION("ragged feature rows") {
        Dataset ds;
        ds.labels = {"a", "b"};
        ds.x = {{1.0, 2.0}, {3.0}};
        ds.y = {0, 1};
        CHECK_THROWS_AS(fit(ModelKind::Knn, ds), error);
    }
    SECTION("row with a label outside the configured order") {
        FeatureVector fv;
        fv.label = "Martian";
        CHECK_THROWS_AS(make_dataset({fv}, default_script_labels()), error);
    }
}
