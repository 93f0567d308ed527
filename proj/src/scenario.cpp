#include "phishembed/scenario.hpp"

#include "phishembed/random.hpp"

#include <map>

namespace phishembed {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::Full20: return "Full20";
        case Scenario::LinearPca2: return "LinearPca2";
        case Scenario::KernelPca2: return "KernelPca2";
    }
    return "Full20";
}

std::string_view cli_name(Scenario s) {
    switch (s) {
        case Scenario::Full20: return "full20";
        case Scenario::LinearPca2: return "pca2";
        case Scenario::KernelPca2: return "kpca2";
    }
    return "full20";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (auto s : kAllScenarios)
        if (name == cli_name(s) || name == to_string(s)) return s;
    return std::nullopt;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["doc2vec"] = {{"dim", doc2vec.dim},
                    {"window", doc2vec.window},
                    {"epochs", doc2vec.epochs},
                    {"negative_samples", doc2vec.negative_samples},
                    {"initial_learning_rate", doc2vec.initial_learning_rate},
                    {"min_learning_rate", doc2vec.min_learning_rate},
                    {"min_count", doc2vec.min_count},
                    {"seed", doc2vec.seed}};
    j["preprocess"] = {{"stopwords", default_stopwords().name}, {"include_subject", preprocess.include_subject}};
    j["folds"] = folds;
    j["stratify"] = stratify;
    j["leakage_free"] = leakage_free;
    if (kpca_gamma) j["kpca_gamma"] = *kpca_gamma;
    else j["kpca_gamma"] = "default";
    j["projected_dims"] = projected_dims;
    j["variance_threshold"] = variance_threshold;
    nlohmann::ordered_json g = nlohmann::ordered_json::array();
    for (const auto& grid : grids) g.push_back(grid_json(grid));
    j["grids"] = std::move(g);
    return j;
}

namespace {

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PipelineError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(stage, e.what());
    }
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& fold) {
    std::vector<bool> in(n, false);
    for (auto i : fold) in[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

struct Projected {
    Matrix train;
    Matrix test;
};

/// Fits the scenario's projection on `train` and applies it to both parts.
Projected project(Scenario scenario, const Matrix& train, const Matrix& test, const RunConfig& config) {
    switch (scenario) {
        case Scenario::Full20: return {train, test};
        case Scenario::LinearPca2: {
            const auto pca = fit_pca(train, config.projected_dims);
            return {transform_pca(pca, train), transform_pca(pca, test)};
        }
        case Scenario::KernelPca2: {
            const double gamma = config.kpca_gamma ? *config.kpca_gamma : default_rbf_gamma(train);
            const auto kpca = fit_kernel_pca(train, config.projected_dims, gamma);
            return {kpca.training_projection, transform_kernel_pca(kpca, test)};
        }
    }
    return {train, test};
}

bool better(const MetricsReport& a, const MetricsReport& b) {
    if (a.mean.accuracy != b.mean.accuracy) return a.mean.accuracy > b.mean.accuracy;
    return a.mean.f1 > b.mean.f1;
}

struct ReferenceBest {
    const char* classifier;
    double accuracy;
    double f1;
};

// Orientation figures written next to the measured best; never asserted.
ReferenceBest reference_best(Scenario s) {
    switch (s) {
        case Scenario::Full20: return {"svm", 0.816, 0.766};
        case Scenario::LinearPca2: return {"random_forest", 0.916, 0.900};
        case Scenario::KernelPca2: return {"svm", 0.783, 0.766};
    }
    return {"", 0.0, 0.0};
}

}  // namespace

Embeddings build_embeddings(const Corpus& corpus, const RunConfig& config) {
    Embeddings e;
    in_stage("preprocess", [&] {
        e.docs = preprocess_corpus(corpus, default_stopwords(), config.preprocess);
        return 0;
    });
    in_stage("doc2vec", [&] {
        e.doc2vec = train_doc2vec(e.docs, config.doc2vec);
        std::map<std::string, Label> labels;
        for (const auto& s : corpus.samples) labels[s.id] = s.label;
        e.matrix = doc_embeddings(e.doc2vec, labels);
        for (auto l : e.matrix.labels) e.labels.push_back(static_cast<int>(l));
        return 0;
    });
    in_stage("folds", [&] {
        e.folds = kfold_indices(e.labels.size(), config.folds, config.seed,
                                config.stratify ? &e.labels : nullptr);
        return 0;
    });
    if (!config.leakage_free) return e;

    in_stage("doc2vec-per-fold", [&] {
        const std::size_t n = e.docs.size();
        for (std::size_t f = 0; f < e.folds.size(); ++f) {
            const auto train = complement(n, e.folds[f]);
            std::vector<TokenDoc> train_docs;
            for (auto i : train) train_docs.push_back(e.docs[i]);
            auto fold_config = config.doc2vec;
            fold_config.seed = derive_seed(config.doc2vec.seed, f);
            const auto model = train_doc2vec(train_docs, fold_config);
            e.fold_train_vectors.push_back(model.doc_vectors);
            Matrix test(e.folds[f].size(), config.doc2vec.dim);
            for (std::size_t t = 0; t < e.folds[f].size(); ++t) {
                const auto idx = e.folds[f][t];
                const auto v = infer_vector(model, e.docs[idx], config.doc2vec.epochs,
                                            derive_seed(fold_config.seed, 1000 + idx));
                std::copy(v.begin(), v.end(), test.row(t).begin());
            }
            e.fold_test_vectors.push_back(std::move(test));
        }
        return 0;
    });
    return e;
}

ScenarioResult run_scenario(const Embeddings& e, Scenario scenario, const RunConfig& config) {
    ScenarioResult r;
    r.scenario = scenario;
    const Matrix& full = e.matrix.vectors;

    in_stage("projection", [&] {
        switch (scenario) {
            case Scenario::Full20: r.features = full; break;
            case Scenario::LinearPca2: {
                r.pca = fit_pca(full, config.projected_dims);
                r.features = transform_pca(*r.pca, full);
                r.variance_curve = cumulative_variance_curve(*r.pca);
                r.components_for_threshold = components_for_variance(r.variance_curve, config.variance_threshold);
                break;
            }
            case Scenario::KernelPca2: {
                const double gamma = config.kpca_gamma ? *config.kpca_gamma : default_rbf_gamma(full);
                r.kernel_pca = fit_kernel_pca(full, config.projected_dims, gamma);
                r.features = r.kernel_pca->training_projection;
                break;
            }
        }
        return 0;
    });

    const auto folds = in_stage("projection", [&] {
        if (!config.leakage_free) return split_folds(r.features, e.labels, e.folds);
        std::vector<FoldData> out;
        for (std::size_t f = 0; f < e.folds.size(); ++f) {
            const auto p = project(scenario, e.fold_train_vectors[f], e.fold_test_vectors[f], config);
            FoldData fd;
            fd.train.x = p.train;
            for (auto i : complement(e.labels.size(), e.folds[f])) fd.train.y.push_back(e.labels[i]);
            fd.test_x = p.test;
            fd.test_indices = e.folds[f];
            for (auto i : e.folds[f]) fd.test_y.push_back(e.labels[i]);
            out.push_back(std::move(fd));
        }
        return out;
    });

    in_stage("classification", [&] {
        const LabeledDataset all{r.features, e.labels, e.matrix.doc_ids};
        for (const auto& grid : config.grids) {
            ClassifierOutcome out;
            out.grid = grid;
            out.search = grid_search(folds, grid, config.seed, config.jobs);
            out.final_report = cross_validate(folds, out.search.best().config, config.seed);
            out.final_report.scenario = std::string(to_string(scenario));
            out.full_model = fit_classifier(out.search.best().config, all, config.seed);
            for (auto& t : out.search.trials) t.report.scenario = out.final_report.scenario;
            r.classifiers.push_back(std::move(out));
        }
        for (std::size_t i = 1; i < r.classifiers.size(); ++i)
            if (better(r.classifiers[i].final_report, r.classifiers[r.best_classifier].final_report))
                r.best_classifier = i;

        if (scenario == Scenario::Full20) return 0;
        // Best RBF trial of the SVM grid drives the boundary plot.
        for (const auto& c : r.classifiers) {
            if (c.grid.family != ClassifierFamily::Svm) continue;
            const GridTrial* best = nullptr;
            for (const auto& t : c.search.trials) {
                if (std::get<SvmParams>(t.config).kernel != SvmKernel::Rbf) continue;
                if (!best || better(t.report, best->report)) best = &t;
            }
            if (best) r.best_rbf_svm = fit_classifier(best->config, all, config.seed);
        }
        return 0;
    });
    return r;
}

RunResult run_pipeline(const Corpus& corpus, const std::vector<Scenario>& scenarios, const RunConfig& config) {
    if (config.grids.empty()) throw ConfigError("run: no classifier grids configured");
    RunResult result;
    result.config = config;
    result.embeddings = build_embeddings(corpus, config);
    for (auto s : scenarios) result.scenarios.push_back(run_scenario(result.embeddings, s, config));
    return result;
}

nlohmann::ordered_json results_json(const RunResult& result) {
    const auto& e = result.embeddings;
    nlohmann::ordered_json j;
    j["format"] = "phishembed-results-v1";
    j["config"] = result.config.to_json();

    std::size_t phishing = 0;
    for (int y : e.labels) phishing += static_cast<std::size_t>(y);
    j["corpus"] = {{"documents", e.labels.size()},
                   {"phishing", phishing},
                   {"legitimate", e.labels.size() - phishing},
                   {"vocabulary_size", e.doc2vec.vocab.size()},
                   {"doc2vec_first_epoch_loss", e.doc2vec.epoch_losses.front()},
                   {"doc2vec_final_epoch_loss", e.doc2vec.epoch_losses.back()}};
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const auto& f : e.folds) {
        std::vector<std::string> ids;
        for (auto i : f) ids.push_back(e.matrix.doc_ids[i]);
        folds.push_back(ids);
    }
    j["folds"] = std::move(folds);

    nlohmann::ordered_json scenarios = nlohmann::ordered_json::array();
    for (const auto& s : result.scenarios) {
        nlohmann::ordered_json sj;
        sj["scenario"] = to_string(s.scenario);
        sj["feature_dims"] = s.features.cols();
        if (s.pca) {
            sj["variance_curve"] = s.variance_curve;
            sj["components_for_threshold"] = s.components_for_threshold;
            sj["explained_variance_ratio"] = s.pca->explained_variance_ratio;
        }
        if (s.kernel_pca) sj["kpca_gamma"] = s.kernel_pca->gamma;
        const auto& best = s.classifiers.at(s.best_classifier).final_report;
        sj["best"] = {{"classifier", best.classifier_name},
                      {"mean_accuracy", best.mean.accuracy},
                      {"mean_f1", best.mean.f1}};
        const auto ref = reference_best(s.scenario);
        sj["reference_best"] = {{"classifier", ref.classifier}, {"accuracy", ref.accuracy}, {"f1", ref.f1}};

        nlohmann::ordered_json reports = nlohmann::ordered_json::array();
        for (const auto& c : s.classifiers) reports.push_back(report_json(c.final_report));
        sj["reports"] = std::move(reports);

        nlohmann::ordered_json searches = nlohmann::ordered_json::array();
        for (const auto& c : s.classifiers) {
            nlohmann::ordered_json gj;
            gj["classifier"] = to_string(c.grid.family);
            gj["grid"] = grid_json(c.grid);
            gj["best_index"] = c.search.best_index;
            nlohmann::ordered_json trials = nlohmann::ordered_json::array();
            for (const auto& t : c.search.trials)
                trials.push_back({{"hyperparameters", t.report.hyperparameters},
                                  {"mean_accuracy", t.report.mean.accuracy},
                                  {"mean_f1", t.report.mean.f1},
                                  {"skipped_folds", t.report.skipped_folds}});
            gj["trials"] = std::move(trials);
            searches.push_back(std::move(gj));
        }
        sj["grid_search"] = std::move(searches);
        if (s.best_rbf_svm) sj["boundary_svm"] = hyperparameters_json(s.best_rbf_svm->config);
        scenarios.push_back(std::move(sj));
    }
    j["scenarios"] = std::move(scenarios);
    return j;
}

}  // namespace phishembed
