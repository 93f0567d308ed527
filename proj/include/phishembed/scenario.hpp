#pragma once

#include "phishembed/corpus.hpp"
#include "phishembed/doc2vec.hpp"
#include "phishembed/errors.hpp"
#include "phishembed/grid_search.hpp"
#include "phishembed/projection.hpp"
#include "phishembed/textprep.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace phishembed {

enum class Scenario { Full20, LinearPca2, KernelPca2 };

/// "Full20", "LinearPca2", "KernelPca2"
std::string_view to_string(Scenario s);
/// CLI spelling: "full20", "pca2", "kpca2"
std::string_view cli_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
inline constexpr Scenario kAllScenarios[] = {Scenario::Full20, Scenario::LinearPca2, Scenario::KernelPca2};

/// A failure inside the pipeline, tagged with the stage that raised it.
class PipelineError : public Error {
public:
    PipelineError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct RunConfig {
    std::uint64_t seed = 7;
    Doc2VecConfig doc2vec;
    PreprocessOptions preprocess;
    std::size_t folds = 10;
    bool stratify = true;
    /// Fit Doc2Vec and projections inside each training fold.
    bool leakage_free = false;
    /// Kernel PCA gamma; nullopt picks default_rbf_gamma of the embeddings.
    std::optional<double> kpca_gamma;
    std::size_t projected_dims = 2;
    /// Threshold whose component count is logged for the linear PCA curve.
    double variance_threshold = 0.90;
    std::size_t jobs = 1;
    std::vector<GridSpec> grids = {default_grid(ClassifierFamily::Svm),
                                   default_grid(ClassifierFamily::LogisticRegression),
                                   default_grid(ClassifierFamily::RandomForest),
                                   default_grid(ClassifierFamily::NaiveBayes)};

    nlohmann::ordered_json to_json() const;
};

/// Everything fitted on the whole corpus before any scenario runs.
struct Embeddings {
    std::vector<TokenDoc> docs;
    Doc2VecModel doc2vec;
    EmbeddingMatrix matrix;
    std::vector<int> labels;
    /// Stratified (or plain) fold assignment shared by every scenario.
    std::vector<std::vector<std::size_t>> folds;
    /// Leakage-free mode only: per fold, a Doc2Vec fitted on the training docs
    /// with train vectors taken from it and test vectors inferred.
    std::vector<Matrix> fold_train_vectors;
    std::vector<Matrix> fold_test_vectors;
};

Embeddings build_embeddings(const Corpus& corpus, const RunConfig& config);

struct ClassifierOutcome {
    GridSpec grid;
    GridSearchResult search;
    /// Cross-validation rerun at the selected hyperparameters.
    MetricsReport final_report;
    /// Selected configuration refitted on every sample of the scenario.
    TrainedClassifier full_model;
};

struct ScenarioResult {
    Scenario scenario = Scenario::Full20;
    /// Classifier inputs for the whole corpus (rows follow doc_ids).
    Matrix features;
    std::optional<PcaModel> pca;
    std::optional<KernelPcaModel> kernel_pca;
    std::vector<double> variance_curve;
    std::size_t components_for_threshold = 0;
    std::vector<ClassifierOutcome> classifiers;
    std::size_t best_classifier = 0;
    /// Best RBF-kernel SVM (2-D scenarios only), refitted on all samples.
    std::optional<TrainedClassifier> best_rbf_svm;
};

ScenarioResult run_scenario(const Embeddings& embeddings, Scenario scenario, const RunConfig& config);

struct RunResult {
    RunConfig config;
    Embeddings embeddings;
    std::vector<ScenarioResult> scenarios;
};

RunResult run_pipeline(const Corpus& corpus, const std::vector<Scenario>& scenarios, const RunConfig& config);

/// Deterministic results document (no timestamps).
nlohmann::ordered_json results_json(const RunResult& result);

}  // namespace phishembed
