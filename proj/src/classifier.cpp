#include "phishembed/classifier.hpp"

#include "phishembed/errors.hpp"

#include <fstream>

namespace phishembed {

std::string_view to_string(ClassifierFamily family) {
    switch (family) {
        case ClassifierFamily::Svm: return "svm";
        case ClassifierFamily::LogisticRegression: return "logistic_regression";
        case ClassifierFamily::RandomForest: return "random_forest";
        case ClassifierFamily::NaiveBayes: return "gaussian_nb";
    }
    return "svm";
}

std::optional<ClassifierFamily> parse_family(std::string_view name) {
    for (auto f : kAllFamilies)
        if (to_string(f) == name) return f;
    return std::nullopt;
}

ClassifierFamily family_of(const ClassifierConfig& config) {
    return static_cast<ClassifierFamily>(config.index());
}

double svm_scale_gamma(const Matrix& x) {
    const std::size_t count = x.rows() * x.cols();
    if (count == 0) return 1.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < count; ++i) mean += x.data()[i];
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t i = 0; i < count; ++i) var += (x.data()[i] - mean) * (x.data()[i] - mean);
    var /= static_cast<double>(count);
    if (!(var > 0.0)) return 1.0;
    return 1.0 / (static_cast<double>(x.cols()) * var);
}

// ---------------------------------------------------------------------------
// Hyperparameters

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

nlohmann::ordered_json hyperparameters_json(const ClassifierConfig& config) {
    nlohmann::ordered_json j;
    std::visit(overloaded{
                   [&](const SvmParams& p) {
                       j["kernel"] = to_string(p.kernel);
                       j["C"] = p.c;
                       if (p.kernel != SvmKernel::Linear) {
                           if (p.gamma) j["gamma"] = *p.gamma;
                           else j["gamma"] = "scale";
                       }
                       if (p.kernel == SvmKernel::Polynomial) j["degree"] = p.degree;
                       j["tolerance"] = p.tolerance;
                       j["max_passes"] = p.max_passes;
                   },
                   [&](const LogRegParams& p) {
                       j["regularization_strength"] = p.regularization_strength;
                       j["learning_rate"] = p.learning_rate;
                       j["epochs"] = p.epochs;
                   },
                   [&](const ForestParams& p) {
                       j["n_estimators"] = p.n_estimators;
                       if (p.max_depth) j["max_depth"] = *p.max_depth;
                       else j["max_depth"] = nullptr;
                       j["min_samples_leaf"] = p.min_samples_leaf;
                       j["min_samples_split"] = p.min_samples_split;
                       j["criterion"] = to_string(p.criterion);
                   },
                   [&](const GnbParams& p) { j["variance_floor"] = p.variance_floor; },
               },
               config);
    return j;
}

ClassifierConfig config_from_json(ClassifierFamily family, const nlohmann::json& j) {
    switch (family) {
        case ClassifierFamily::Svm: {
            SvmParams p;
            const auto kernel = parse_svm_kernel(j.at("kernel").get<std::string>());
            if (!kernel) throw ConfigError("unknown SVM kernel '" + j.at("kernel").get<std::string>() + "'");
            p.kernel = *kernel;
            p.c = j.at("C");
            if (j.contains("gamma") && j["gamma"].is_number()) p.gamma = j["gamma"].get<double>();
            p.degree = j.value("degree", 3);
            p.tolerance = j.value("tolerance", 1e-3);
            p.max_passes = j.value("max_passes", 10000);
            return p;
        }
        case ClassifierFamily::LogisticRegression: {
            LogRegParams p;
            p.regularization_strength = j.at("regularization_strength");
            p.learning_rate = j.value("learning_rate", 0.5);
            p.epochs = j.value("epochs", 2000);
            return p;
        }
        case ClassifierFamily::RandomForest: {
            ForestParams p;
            p.n_estimators = j.at("n_estimators");
            if (j.contains("max_depth") && !j["max_depth"].is_null()) p.max_depth = j["max_depth"].get<int>();
            p.min_samples_leaf = j.value("min_samples_leaf", 1);
            p.min_samples_split = j.value("min_samples_split", 2);
            const auto crit = parse_criterion(j.value("criterion", std::string("gini")));
            if (!crit) throw ConfigError("unknown split criterion");
            p.criterion = *crit;
            return p;
        }
        case ClassifierFamily::NaiveBayes: {
            GnbParams p;
            p.variance_floor = j.value("variance_floor", 1e-9);
            return p;
        }
    }
    throw ConfigError("unknown classifier family");
}

// ---------------------------------------------------------------------------
// Fit / predict

TrainedClassifier fit_classifier(const ClassifierConfig& config, const LabeledDataset& data, std::uint64_t seed) {
    TrainedClassifier out;
    out.config = config;
    out.seed = seed;
    out.model = std::visit(
        overloaded{
            [&](const SvmParams& p) -> ClassifierModel {
                const double gamma = p.gamma ? *p.gamma : svm_scale_gamma(data.x);
                SvmOptions opt;
                opt.c = p.c;
                opt.tolerance = p.tolerance;
                opt.max_passes = p.max_passes;
                opt.seed = seed;
                return svm_fit(data, make_kernel_params(p.kernel, gamma, p.degree), opt);
            },
            [&](const LogRegParams& p) -> ClassifierModel {
                LogRegOptions opt;
                opt.regularization_strength = p.regularization_strength;
                opt.learning_rate = p.learning_rate;
                opt.epochs = p.epochs;
                return logreg_fit(data, opt);
            },
            [&](const ForestParams& p) -> ClassifierModel {
                ForestOptions opt;
                opt.n_estimators = p.n_estimators;
                opt.max_depth = p.max_depth;
                opt.min_samples_leaf = p.min_samples_leaf;
                opt.min_samples_split = p.min_samples_split;
                opt.criterion = p.criterion;
                opt.seed = seed;
                return forest_fit(data, opt);
            },
            [&](const GnbParams& p) -> ClassifierModel { return gnb_fit(data, p.variance_floor); },
        },
        config);
    return out;
}

std::vector<int> TrainedClassifier::predict(const Matrix& x) const {
    return std::visit(overloaded{
                          [&](const SvmModel& m) { return svm_predict(m, x); },
                          [&](const LogRegModel& m) { return logreg_predict(m, x); },
                          [&](const RandomForestModel& m) { return forest_predict(m, x); },
                          [&](const GaussianNbModel& m) { return gnb_predict(m, x); },
                      },
                      model);
}

double TrainedClassifier::decision_score(std::span<const double> x) const {
    return std::visit(overloaded{
                          [&](const SvmModel& m) { return svm_decision(m, x); },
                          [&](const LogRegModel& m) { return logreg_probability(m, x); },
                          [&](const RandomForestModel& m) { return forest_vote_fraction(m, x); },
                          [&](const GaussianNbModel& m) {
                              return gnb_joint_log_likelihood(m, 1, x) - gnb_joint_log_likelihood(m, 0, x);
                          },
                      },
                      model);
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

nlohmann::json rows_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix rows_matrix(const nlohmann::json& j, std::size_t cols) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) return Matrix(0, cols);
    return Matrix::from_rows(rows);
}

nlohmann::ordered_json kernel_json(const SvmKernelParams& k) {
    return {{"kernel", to_string(k.kernel)}, {"gamma", k.gamma}, {"degree", k.degree}, {"coef0", k.coef0}};
}

nlohmann::ordered_json model_json(const ClassifierModel& model) {
    nlohmann::ordered_json j;
    std::visit(overloaded{
                   [&](const SvmModel& m) {
                       j["kernel"] = kernel_json(m.kernel);
                       j["C"] = m.c;
                       j["dim"] = m.support_vectors.cols();
                       j["support_vectors"] = rows_json(m.support_vectors);
                       j["dual_coefs"] = m.dual_coefs;
                       j["alphas"] = m.alphas;
                       j["bias"] = m.bias;
                       j["passes"] = m.passes;
                       j["converged"] = m.converged;
                   },
                   [&](const LogRegModel& m) {
                       j["weights"] = m.weights;
                       j["regularization_strength"] = m.regularization_strength;
                       j["effective_learning_rate"] = m.effective_learning_rate;
                       if (!m.loss_history.empty()) j["final_loss"] = m.loss_history.back();
                   },
                   [&](const RandomForestModel& m) {
                       j["n_features"] = m.n_features;
                       nlohmann::ordered_json trees = nlohmann::ordered_json::array();
                       for (const auto& t : m.trees) {
                           nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
                           for (const auto& n : t.nodes)
                               nodes.push_back({n.feature, n.threshold, n.left, n.right, n.counts[0], n.counts[1],
                                                n.depth});
                           trees.push_back(std::move(nodes));
                       }
                       j["trees"] = std::move(trees);
                   },
                   [&](const GaussianNbModel& m) {
                       j["priors"] = {m.priors[0], m.priors[1]};
                       j["means"] = {m.means[0], m.means[1]};
                       j["variances"] = {m.variances[0], m.variances[1]};
                       j["variance_floor"] = m.variance_floor;
                   },
               },
               model);
    return j;
}

ClassifierModel model_from_json(const ClassifierConfig& config, const nlohmann::json& j, std::uint64_t seed) {
    switch (family_of(config)) {
        case ClassifierFamily::Svm: {
            SvmModel m;
            const auto& k = j.at("kernel");
            const auto kernel = parse_svm_kernel(k.at("kernel").get<std::string>());
            if (!kernel) throw ConfigError("unknown SVM kernel in model file");
            m.kernel = {*kernel, k.at("gamma").get<double>(), k.at("degree").get<int>(), k.at("coef0").get<double>()};
            m.c = j.at("C");
            m.support_vectors = rows_matrix(j.at("support_vectors"), j.at("dim").get<std::size_t>());
            m.dual_coefs = j.at("dual_coefs").get<std::vector<double>>();
            m.alphas = j.at("alphas").get<std::vector<double>>();
            m.bias = j.at("bias");
            m.passes = j.value("passes", 0);
            m.converged = j.value("converged", true);
            if (m.dual_coefs.size() != m.support_vectors.rows() || m.alphas.size() != m.dual_coefs.size())
                throw DimensionError("stored SVM model is inconsistent");
            return m;
        }
        case ClassifierFamily::LogisticRegression: {
            LogRegModel m;
            m.weights = j.at("weights").get<std::vector<double>>();
            m.regularization_strength = j.at("regularization_strength");
            m.effective_learning_rate = j.value("effective_learning_rate", 0.0);
            // Only the last loss is stored; keep it so a reload re-serializes identically.
            if (j.contains("final_loss")) m.loss_history = {j["final_loss"].get<double>()};
            if (m.weights.empty()) throw DimensionError("stored logistic regression has no weights");
            return m;
        }
        case ClassifierFamily::RandomForest: {
            const auto& p = std::get<ForestParams>(config);
            RandomForestModel m;
            m.options = {p.n_estimators, p.max_depth, p.min_samples_leaf, p.min_samples_split, p.criterion, seed};
            m.n_features = j.at("n_features");
            for (const auto& t : j.at("trees")) {
                DecisionTree tree;
                for (const auto& n : t) {
                    TreeNode node;
                    node.feature = n.at(0);
                    node.threshold = n.at(1);
                    node.left = n.at(2);
                    node.right = n.at(3);
                    node.counts[0] = n.at(4);
                    node.counts[1] = n.at(5);
                    node.depth = n.at(6);
                    tree.nodes.push_back(node);
                }
                const int size = static_cast<int>(tree.nodes.size());
                for (const auto& node : tree.nodes)
                    if (!node.is_leaf() && (node.left <= 0 || node.left >= size || node.right <= 0 ||
                                            node.right >= size || node.feature >= static_cast<int>(m.n_features)))
                        throw DimensionError("stored decision tree is inconsistent");
                if (tree.nodes.empty()) throw DimensionError("stored decision tree is empty");
                m.trees.push_back(std::move(tree));
            }
            return m;
        }
        case ClassifierFamily::NaiveBayes: {
            GaussianNbModel m;
            for (int k = 0; k < 2; ++k) {
                m.priors[k] = j.at("priors").at(k);
                m.means[k] = j.at("means").at(k).get<std::vector<double>>();
                m.variances[k] = j.at("variances").at(k).get<std::vector<double>>();
            }
            m.variance_floor = j.at("variance_floor");
            if (m.means[0].size() != m.means[1].size() || m.variances[0].size() != m.means[0].size() ||
                m.variances[1].size() != m.means[0].size())
                throw DimensionError("stored naive Bayes model is inconsistent");
            return m;
        }
    }
    throw ConfigError("unknown classifier family");
}

}  // namespace

nlohmann::ordered_json classifier_to_json(const TrainedClassifier& clf) {
    nlohmann::ordered_json j;
    j["format"] = "phishembed-classifier-v1";
    j["family"] = to_string(family_of(clf.config));
    j["hyperparameters"] = hyperparameters_json(clf.config);
    j["seed"] = clf.seed;
    j["model"] = model_json(clf.model);
    return j;
}

TrainedClassifier classifier_from_json(const nlohmann::json& j) {
    try {
        const auto family = parse_family(j.at("family").get<std::string>());
        if (!family) throw ConfigError("unknown classifier family '" + j.at("family").get<std::string>() + "'");
        TrainedClassifier clf;
        clf.config = config_from_json(*family, j.at("hyperparameters"));
        clf.seed = j.at("seed");
        clf.model = model_from_json(clf.config, j.at("model"), clf.seed);
        return clf;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid classifier model: ") + e.what(), 1);
    }
}

void save_classifier(const TrainedClassifier& clf, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << classifier_to_json(clf).dump() << '\n';
}

TrainedClassifier load_classifier(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid classifier model: ") + e.what(), 1);
    }
    return classifier_from_json(j);
}

}  // namespace phishembed
