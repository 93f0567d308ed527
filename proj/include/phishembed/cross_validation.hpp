#pragma once

#include "phishembed/classifier.hpp"
#include "phishembed/metrics.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phishembed {

/// Shuffles [0, n) with `seed` and deals position p to fold p mod k. With
/// labels, each class is shuffled on its own and the class lists are dealt
/// back to back, so per-class counts per fold differ by at most one.
/// Throws ConfigError unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed,
                                                    const std::vector<int>* stratify_labels = nullptr);

/// Train/test features of one fold. Leakage-free runs build these from
/// per-fold transforms; otherwise they are row selections of one matrix.
struct FoldData {
    LabeledDataset train;
    Matrix test_x;
    std::vector<int> test_y;
    std::vector<std::size_t> test_indices;
};

std::vector<FoldData> split_folds(const Matrix& x, const std::vector<int>& y,
                                  const std::vector<std::vector<std::size_t>>& folds);

struct FoldReport {
    std::size_t fold = 0;
    bool skipped = false;
    Metrics metrics;
    ConfusionMatrix confusion;
};

struct MetricsReport {
    std::string scenario;
    std::string classifier_name;
    nlohmann::ordered_json hyperparameters;
    std::uint64_t seed = 0;
    std::vector<FoldReport> per_fold;
    /// Means over folds that were evaluated.
    Metrics mean;
    ConfusionMatrix pooled;
    Metrics pooled_metrics;
    std::size_t skipped_folds = 0;
    std::vector<std::string> warnings;
};

/// Fits on every fold's training part and scores its test part. A fold whose
/// training part holds one class is skipped with a warning.
MetricsReport cross_validate(const std::vector<FoldData>& folds, const ClassifierConfig& config,
                             std::uint64_t seed);

MetricsReport cross_validate(const Matrix& x, const std::vector<int>& y, const ClassifierConfig& config,
                             std::size_t k, std::uint64_t seed, bool stratify = true);

nlohmann::ordered_json report_json(const MetricsReport& report);

}  // namespace phishembed
