// Minimal end-to-end run: generate a small synthetic corpus, train an SVM on a
// stratified split, and print the evaluation report.

#include <filesystem>
#include <iostream>

#include <scriptid/scriptid.hpp>

int main() {
    using namespace scriptid;
    namespace fs = std::filesystem;

    const fs::path dir = fs::temp_directory_path() / "scriptid_pipeline_demo";
    fs::remove_all(dir);

    SynthSpec spec;
    spec.classes = 4;
    spec.lines_per_class = 24;
    spec.seed = 11;
    const Corpus corpus = generate_synth_corpus(spec, dir.string());
    std::cout << "rendered " << corpus.items.size() << " lines under " << dir << "\n";

    const auto rows = extract_corpus_features(corpus);
    const auto [train_rows, test_rows] = split_features(rows, 0.65, 11);

    const TrainedModel model = fit(ModelKind::Svm, train_rows);
    const EvaluationReport report = evaluate(model, test_rows);
    std::cout << render_text(report);
    return 0;
}
