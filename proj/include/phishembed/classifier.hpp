#pragma once

#include "phishembed/classifiers.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace phishembed {

enum class ClassifierFamily { Svm, LogisticRegression, RandomForest, NaiveBayes };

std::string_view to_string(ClassifierFamily family);
std::optional<ClassifierFamily> parse_family(std::string_view name);
inline constexpr ClassifierFamily kAllFamilies[] = {ClassifierFamily::Svm, ClassifierFamily::LogisticRegression,
                                                    ClassifierFamily::RandomForest, ClassifierFamily::NaiveBayes};

struct SvmParams {
    SvmKernel kernel = SvmKernel::Rbf;
    double c = 1.0;
    /// nullopt means "scale": 1 / (d * variance of all training entries).
    std::optional<double> gamma;
    int degree = 3;
    double tolerance = 1e-3;
    int max_passes = 10000;
};

struct LogRegParams {
    double regularization_strength = 0.0;
    double learning_rate = 0.5;
    int epochs = 2000;
};

struct ForestParams {
    int n_estimators = 100;
    std::optional<int> max_depth;
    int min_samples_leaf = 1;
    int min_samples_split = 2;
    SplitCriterion criterion = SplitCriterion::Gini;
};

struct GnbParams {
    double variance_floor = 1e-9;
};

using ClassifierConfig = std::variant<SvmParams, LogRegParams, ForestParams, GnbParams>;
using ClassifierModel = std::variant<SvmModel, LogRegModel, RandomForestModel, GaussianNbModel>;

ClassifierFamily family_of(const ClassifierConfig& config);

/// Hyperparameters as a flat JSON object, in a fixed key order.
nlohmann::ordered_json hyperparameters_json(const ClassifierConfig& config);
ClassifierConfig config_from_json(ClassifierFamily family, const nlohmann::json& j);

/// sklearn-style "scale": 1 / (d * population variance of every entry of x).
double svm_scale_gamma(const Matrix& x);

struct TrainedClassifier {
    ClassifierConfig config;
    ClassifierModel model;
    std::uint64_t seed = 0;

    std::vector<int> predict(const Matrix& x) const;
    /// Signed score whose sign (or side of 0.5 for probabilistic models) gives the label.
    double decision_score(std::span<const double> x) const;
};

/// Fits the configured classifier. `seed` drives SMO's second choice and the forest.
TrainedClassifier fit_classifier(const ClassifierConfig& config, const LabeledDataset& data, std::uint64_t seed);

nlohmann::ordered_json classifier_to_json(const TrainedClassifier& clf);
TrainedClassifier classifier_from_json(const nlohmann::json& j);
void save_classifier(const TrainedClassifier& clf, const std::filesystem::path& path);
TrainedClassifier load_classifier(const std::filesystem::path& path);

}  // namespace phishembed
