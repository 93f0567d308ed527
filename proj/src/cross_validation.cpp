#include "phishembed/cross_validation.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/random.hpp"

#include <map>
#include <numeric>

namespace phishembed {

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed,
                                                    const std::vector<int>* stratify_labels) {
    if (k < 2) throw ConfigError("k-fold: k must be at least 2");
    if (k > n) throw ConfigError("k-fold: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    Rng rng(seed);

    std::vector<std::size_t> order;
    if (stratify_labels) {
        if (stratify_labels->size() != n) throw DimensionError("k-fold: label vector length differs from n");
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[(*stratify_labels)[i]].push_back(i);
        for (auto& [label, members] : by_class) {
            shuffle_in_place(members, rng);
            order.insert(order.end(), members.begin(), members.end());
        }
    } else {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        shuffle_in_place(order, rng);
    }

    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t p = 0; p < n; ++p) folds[p % k].push_back(order[p]);
    return folds;
}

std::vector<FoldData> split_folds(const Matrix& x, const std::vector<int>& y,
                                  const std::vector<std::vector<std::size_t>>& folds) {
    if (x.rows() != y.size()) throw DimensionError("cross-validation: features and labels differ in length");
    std::vector<FoldData> out;
    out.reserve(folds.size());
    std::vector<int> fold_of(y.size(), -1);
    for (std::size_t f = 0; f < folds.size(); ++f)
        for (auto i : folds[f]) fold_of.at(i) = static_cast<int>(f);

    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (fold_of[i] != static_cast<int>(f)) train.push_back(i);
        FoldData fd;
        fd.train.x = x.select_rows(train);
        for (auto i : train) fd.train.y.push_back(y[i]);
        fd.test_indices = folds[f];
        fd.test_x = x.select_rows(folds[f]);
        for (auto i : folds[f]) fd.test_y.push_back(y[i]);
        out.push_back(std::move(fd));
    }
    return out;
}

MetricsReport cross_validate(const std::vector<FoldData>& folds, const ClassifierConfig& config,
                             std::uint64_t seed) {
    MetricsReport report;
    report.classifier_name = std::string(to_string(family_of(config)));
    report.hyperparameters = hyperparameters_json(config);
    report.seed = seed;

    std::size_t evaluated = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto& fold = folds[f];
        FoldReport fr;
        fr.fold = f;
        if (!fold.train.has_both_classes()) {
            fr.skipped = true;
            ++report.skipped_folds;
            report.warnings.push_back("fold " + std::to_string(f) + ": training split contains one class; skipped");
            report.per_fold.push_back(fr);
            continue;
        }
        if (fold.test_y.empty()) {
            fr.skipped = true;
            ++report.skipped_folds;
            report.warnings.push_back("fold " + std::to_string(f) + ": empty test split; skipped");
            report.per_fold.push_back(fr);
            continue;
        }
        const auto clf = fit_classifier(config, fold.train, derive_seed(seed, f));
        fr.confusion = confusion_matrix(fold.test_y, clf.predict(fold.test_x));
        fr.metrics = compute_metrics(fr.confusion);
        report.pooled += fr.confusion;
        report.mean.accuracy += fr.metrics.accuracy;
        report.mean.precision += fr.metrics.precision;
        report.mean.recall += fr.metrics.recall;
        report.mean.f1 += fr.metrics.f1;
        ++evaluated;
        report.per_fold.push_back(fr);
    }
    if (evaluated == 0) throw ConfigError("cross-validation: every fold was skipped");
    const double n = static_cast<double>(evaluated);
    report.mean.accuracy /= n;
    report.mean.precision /= n;
    report.mean.recall /= n;
    report.mean.f1 /= n;
    report.pooled_metrics = compute_metrics(report.pooled);
    return report;
}

MetricsReport cross_validate(const Matrix& x, const std::vector<int>& y, const ClassifierConfig& config,
                             std::size_t k, std::uint64_t seed, bool stratify) {
    LabeledDataset all{x, y, {}};
    all.validate();
    if (!all.has_both_classes()) throw ConfigError("cross-validation: data contains a single class");
    const auto folds = kfold_indices(y.size(), k, seed, stratify ? &y : nullptr);
    return cross_validate(split_folds(x, y, folds), config, seed);
}

namespace {

nlohmann::ordered_json metrics_json(const Metrics& m) {
    return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

nlohmann::ordered_json confusion_json(const ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

}  // namespace

nlohmann::ordered_json report_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["scenario"] = report.scenario;
    j["classifier"] = report.classifier_name;
    j["hyperparameters"] = report.hyperparameters;
    j["seed"] = report.seed;
    j["mean"] = metrics_json(report.mean);
    j["pooled_confusion"] = confusion_json(report.pooled);
    j["pooled"] = metrics_json(report.pooled_metrics);
    j["skipped_folds"] = report.skipped_folds;
    j["warnings"] = report.warnings;
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const auto& f : report.per_fold) {
        nlohmann::ordered_json fj;
        fj["fold"] = f.fold;
        fj["skipped"] = f.skipped;
        if (!f.skipped) {
            fj["metrics"] = metrics_json(f.metrics);
            fj["confusion"] = confusion_json(f.confusion);
        }
        folds.push_back(std::move(fj));
    }
    j["per_fold"] = std::move(folds);
    return j;
}

}  // namespace phishembed
