// Command-line front end: synth / extract / train / predict / evaluate / crossval.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <scriptid/scriptid.hpp>

namespace {

namespace fs = std::filesystem;
using namespace scriptid;

struct PreprocessFlags {
    double sigma = 1.0;
    int kernel_size = 5;
    std::string polarity = "dark";
    int grid_n = 4;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sigma", sigma, "Gaussian smoothing sigma")->capture_default_str();
        cmd->add_option("--kernel-size", kernel_size, "Gaussian kernel size (odd)")
            ->capture_default_str();
        cmd->add_option("--polarity", polarity, "Ink polarity: dark or light")
            ->check(CLI::IsMember({"dark", "light"}))
            ->capture_default_str();
        cmd->add_option("--grid-n", grid_n,
                        "Spectral grid size (the 54-feature schema requires 4)")
            ->capture_default_str();
    }

    ExtractConfig to_config() const {
        ExtractConfig cfg;
        cfg.sigma = sigma;
        cfg.kernel_size = kernel_size;
        cfg.polarity = polarity == "light" ? InkPolarity::LightInk : InkPolarity::DarkInk;
        cfg.grid_n = grid_n;
        return cfg;
    }
};

struct ClassifierFlags {
    std::string model = "svm";
    int k = 3;
    double c = 10.0;
    double gamma = 0.0;
    std::string kernel = "rbf";
    double tol = 1e-3;
    long max_epochs = 2000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "Classifier kind")
            ->check(CLI::IsMember({"knn", "naive-bayes", "svm"}))
            ->capture_default_str();
        cmd->add_option("--k", k, "Neighbour count for knn")->capture_default_str();
        cmd->add_option("--c", c, "Soft-margin penalty for svm")->capture_default_str();
        cmd->add_option("--gamma", gamma, "RBF width for svm (0 = 1/dimension)")
            ->capture_default_str();
        cmd->add_option("--kernel", kernel, "SVM kernel")
            ->check(CLI::IsMember({"linear", "rbf"}))
            ->capture_default_str();
        cmd->add_option("--tol", tol, "SVM optimizer tolerance")->capture_default_str();
        cmd->add_option("--max-epochs", max_epochs, "SVM optimizer epoch bound")
            ->capture_default_str();
    }

    ModelKind kind() const { return model_kind_from_string(model); }

    Hyperparams hyper() const {
        Hyperparams hp;
        hp.knn_k = k;
        hp.svm_c = c;
        hp.svm_kernel.kind =
            kernel == "linear" ? KernelSpec::Kind::Linear : KernelSpec::Kind::Rbf;
        hp.svm_kernel.gamma = gamma;
        hp.svm_tol = tol;
        hp.svm_max_epochs = max_epochs;
        return hp;
    }
};

void write_matrix_csv(const EvaluationReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open matrix file for writing: " + path);
    out << "actual";
    for (const auto& l : r.labels) out << ',' << l;
    out << '\n';
    for (size_t a = 0; a < r.labels.size(); ++a) {
        out << r.labels[a];
        for (long v : r.matrix[a]) out << ',' << v;
        out << '\n';
    }
    if (!out) throw io_error("failed while writing matrix file: " + path);
}

void write_text_file(const std::string& content, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw io_error("failed while writing file: " + path);
}

void dump_pipeline(const GrayImage& img, const ExtractConfig& cfg, const std::string& dir) {
    fs::create_directories(dir);
    const GrayImage smoothed = gaussian_smooth(img, cfg.sigma, cfg.kernel_size);
    const BinaryImage bin = otsu_binarize(smoothed, cfg.polarity);
    write_pgm(smoothed, (fs::path(dir) / "smoothed.pgm").string());
    write_pgm(bin, (fs::path(dir) / "binarized.pgm").string());
    const BoundarySet bs = trace_boundaries(bin);
    write_pgm(boundary_overlay(bin, bs), (fs::path(dir) / "boundaries.pgm").string());
    dump_chain_codes(bs, (fs::path(dir) / "chain_codes.txt").string());
    GrayImage flat(bin.width, bin.height);
    for (int y = 0; y < bin.height; ++y)
        for (int x = 0; x < bin.width; ++x) flat.at(x, y) = bin.fg(x, y) ? 1.0 : 0.0;
    const auto [mag, phase] = spectrum_images(flat);
    write_pgm(mag, (fs::path(dir) / "magnitude.pgm").string());
    write_pgm(phase, (fs::path(dir) / "phase.pgm").string());
}

int run(int argc, char** argv) {
    CLI::App app{"script identification from handwritten text-line images"};
    app.require_subcommand(1);

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "Generate a synthetic stroke-texture corpus");
    SynthSpec synth_spec;
    std::string synth_out;
    synth->add_option("--classes", synth_spec.classes, "Number of classes")
        ->capture_default_str();
    synth->add_option("--per-class", synth_spec.lines_per_class, "Lines per class")
        ->capture_default_str();
    synth->add_option("--seed", synth_spec.seed, "Generation seed")->capture_default_str();
    synth->add_option("--width", synth_spec.width, "Image width")->capture_default_str();
    synth->add_option("--height", synth_spec.height, "Image height")->capture_default_str();
    synth->add_option("-o,--output", synth_out, "Output directory")->required();

    // --- extract ---
    auto* extract = app.add_subcommand("extract", "Extract feature vectors from a corpus");
    std::string extract_root, extract_out;
    bool allow_new_labels = false;
    PreprocessFlags extract_pre;
    extract->add_option("corpus-root", extract_root, "Corpus directory")->required();
    extract->add_option("-o,--output", extract_out, "Output feature CSV")->required();
    extract->add_flag("--allow-new-labels", allow_new_labels,
                      "Accept label directories outside the default script set");
    extract_pre.attach(extract);

    // --- train ---
    auto* train = app.add_subcommand("train", "Train a classifier from a feature CSV");
    std::string train_csv, train_out, train_heldout;
    double train_split = 0.0;
    uint64_t train_seed = 0;
    ClassifierFlags train_clf;
    train->add_option("features", train_csv, "Feature CSV")->required();
    train->add_option("-o,--output", train_out, "Output model file")->required();
    auto* split_opt =
        train->add_option("--split", train_split,
                          "Train on this fraction and write the rest to --heldout");
    train->add_option("--heldout", train_heldout, "Held-out feature CSV path")
        ->needs(split_opt);
    split_opt->needs(train->get_option("--heldout"));
    train->add_option("--seed", train_seed, "Split shuffle seed")->capture_default_str();
    train_clf.attach(train);

    // --- predict ---
    auto* predict_cmd = app.add_subcommand("predict", "Classify an image or a feature CSV");
    std::string predict_model, predict_input, dump_dir;
    PreprocessFlags predict_pre;
    predict_cmd->add_option("model", predict_model, "Trained model file")->required();
    predict_cmd->add_option("input", predict_input, "Image (.pgm/.png) or feature CSV")
        ->required();
    predict_cmd->add_option("--dump-dir", dump_dir,
                            "Write intermediate images and chain codes here");
    predict_pre.attach(predict_cmd);

    // --- evaluate ---
    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a model on a labeled feature CSV");
    std::string eval_model, eval_csv, eval_json, eval_matrix;
    eval_cmd->add_option("model", eval_model, "Trained model file")->required();
    eval_cmd->add_option("features", eval_csv, "Feature CSV")->required();
    eval_cmd->add_option("--json", eval_json, "Also write the report as JSON");
    eval_cmd->add_option("--matrix-csv", eval_matrix, "Also write the confusion matrix as CSV");

    // --- crossval ---
    auto* cv_cmd = app.add_subcommand("crossval", "k-fold cross-validation on a feature CSV");
    std::string cv_csv, cv_json;
    int cv_folds = 5;
    uint64_t cv_seed = 0;
    ClassifierFlags cv_clf;
    cv_cmd->add_option("features", cv_csv, "Feature CSV")->required();
    cv_cmd->add_option("--folds", cv_folds, "Fold count")->capture_default_str();
    cv_cmd->add_option("--seed", cv_seed, "Fold shuffle seed")->capture_default_str();
    cv_cmd->add_option("--json", cv_json, "Also write fold reports as JSON");
    cv_clf.attach(cv_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*synth) {
        const Corpus c = generate_synth_corpus(synth_spec, synth_out);
        std::cout << "wrote " << c.items.size() << " images across " << c.labels.size()
                  << " classes to " << synth_out << '\n';
        return 0;
    }
    if (*extract) {
        const Corpus c = load_corpus(extract_root, allow_new_labels);
        const auto rows = extract_corpus_features(c, extract_pre.to_config());
        write_features(rows, extract_out);
        std::cout << "extracted " << rows.size() << " feature rows (" << c.labels.size()
                  << " labels) to " << extract_out << '\n';
        return 0;
    }
    if (*train) {
        auto rows = read_features(train_csv);
        if (train_split > 0.0) {
            auto [tr, held] = split_features(rows, train_split, train_seed);
            write_features(held, train_heldout);
            std::cout << "split " << rows.size() << " rows into " << tr.size()
                      << " train / " << held.size() << " held out (" << train_heldout
                      << ")\n";
            rows = std::move(tr);
        }
        const TrainedModel m = fit(train_clf.kind(), rows, train_clf.hyper());
        save_model(m, train_out);
        std::cout << "trained " << to_string(m.kind) << " on " << rows.size() << " rows, "
                  << m.labels.size() << " classes -> " << train_out << '\n';
        return 0;
    }
    if (*predict_cmd) {
        const TrainedModel m = load_model(predict_model);
        const fs::path input(predict_input);
        std::cout.precision(6);
        if (input.extension() == ".csv") {
            const auto rows = read_features(predict_input);
            for (const auto& row : rows) {
                const Prediction p = predict(m, row);
                std::cout << p.label << ' ' << p.scores[static_cast<size_t>(p.label_index)]
                          << '\n';
            }
        } else {
            const GrayImage img = read_image(predict_input);
            const ExtractConfig cfg = predict_pre.to_config();
            if (!dump_dir.empty()) dump_pipeline(img, cfg, dump_dir);
            const FeatureVector fv = extract_features(img, cfg);
            const Prediction p = predict(m, fv);
            std::cout << p.label << ' ' << p.scores[static_cast<size_t>(p.label_index)]
                      << '\n';
        }
        return 0;
    }
    if (*eval_cmd) {
        const TrainedModel m = load_model(eval_model);
        const auto rows = read_features(eval_csv);
        const EvaluationReport r = evaluate(m, rows);
        std::cout << render_text(r);
        if (!eval_json.empty()) write_text_file(report_to_json(r).dump(2) + "\n", eval_json);
        if (!eval_matrix.empty()) write_matrix_csv(r, eval_matrix);
        return 0;
    }
    if (*cv_cmd) {
        const auto rows = read_features(cv_csv);
        const CrossValResult cv =
            kfold_cross_validate(cv_clf.kind(), rows, cv_folds, cv_seed, cv_clf.hyper());
        std::cout.precision(6);
        for (size_t f = 0; f < cv.folds.size(); ++f)
            std::cout << "fold " << f << ": accuracy " << cv.folds[f].accuracy << " ("
                      << cv.folds[f].correct << "/" << cv.folds[f].total << ")\n";
        std::cout << "mean accuracy " << cv.mean_accuracy << " +- " << cv.stddev_accuracy
                  << "\n\npooled report\n";
        std::cout << render_text(cv.pooled);
        if (!cv_json.empty()) {
            nlohmann::json j;
            j["folds"] = nlohmann::json::array();
            for (const auto& r : cv.folds) j["folds"].push_back(report_to_json(r));
            j["pooled"] = report_to_json(cv.pooled);
            j["mean_accuracy"] = cv.mean_accuracy;
            j["stddev_accuracy"] = cv.stddev_accuracy;
            write_text_file(j.dump(2) + "\n", cv_json);
        }
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const scriptid::error& e) {
        std::cerr << "scriptid: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "scriptid: unexpected error: " << e.what() << '\n';
        return 1;
    }
}
