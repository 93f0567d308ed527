#include "oracles.hpp"

#include "phishembed/classifier.hpp"
#include "phishembed/errors.hpp"

#include <doctest.h>

#include <filesystem>

using namespace phishembed;

namespace {

LabeledDataset sample_data() {
    Rng rng(31);
    LabeledDataset d;
    d.x = oracle::random_matrix(rng, 30, 3);
    for (std::size_t i = 0; i < 30; ++i) d.y.push_back(d.x(i, 0) + d.x(i, 1) * d.x(i, 2) > 0 ? 1 : 0);
    return d;
}

std::vector<ClassifierConfig> one_of_each() {
    SvmParams svm;
    svm.kernel = SvmKernel::Polynomial;
    svm.degree = 2;
    ForestParams rf;
    rf.n_estimators = 7;
    rf.max_depth = 3;
    rf.criterion = SplitCriterion::Entropy;
    return {svm, SvmParams{SvmKernel::Linear, 2.0, 0.5}, LogRegParams{0.1, 0.5, 200}, rf, GnbParams{}};
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("family names") {
    for (auto f : kAllFamilies) CHECK(parse_family(to_string(f)) == f);
    CHECK(to_string(ClassifierFamily::LogisticRegression) == "logistic_regression");
    CHECK_FALSE(parse_family("knn").has_value());
}

TEST_CASE("hyperparameters survive a json round trip") {
    for (const auto& cfg : one_of_each()) {
        const auto j = hyperparameters_json(cfg);
        const auto back = config_from_json(family_of(cfg), j);
        CHECK(hyperparameters_json(back) == j);
    }
    const auto linear = hyperparameters_json(SvmParams{SvmKernel::Linear, 1.0, 0.5});
    CHECK_FALSE(linear.contains("gamma"));
    CHECK(hyperparameters_json(SvmParams{}).at("gamma") == "scale");
    CHECK(hyperparameters_json(ForestParams{}).at("max_depth").is_null());
}

TEST_CASE("scale gamma") {
    // Entries {-1, 1, -1, 1}: variance 1, d = 2.
    CHECK(svm_scale_gamma(Matrix::from_rows({{-1, 1}, {-1, 1}})) == 0.5);
    CHECK(svm_scale_gamma(Matrix(2, 2, 3.0)) == 1.0);
}

TEST_CASE("decision scores agree with predictions") {
    const auto d = sample_data();
    for (const auto& cfg : one_of_each()) {
        const auto clf = fit_classifier(cfg, d, 5);
        const auto pred = clf.predict(d.x);
        const double cut = family_of(cfg) == ClassifierFamily::LogisticRegression ||
                                   family_of(cfg) == ClassifierFamily::RandomForest
                               ? 0.5
                               : 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) CHECK(pred[i] == (clf.decision_score(d.x.row(i)) > cut ? 1 : 0));
    }
}

TEST_CASE("saved models predict identically") {
    const auto d = sample_data();
    Rng rng(2);
    const auto probe = oracle::random_matrix(rng, 50, 3, 2.0);
    const auto path = std::filesystem::temp_directory_path() / "phishembed_clf.json";
    for (const auto& cfg : one_of_each()) {
        const auto clf = fit_classifier(cfg, d, 11);
        save_classifier(clf, path);
        const auto back = load_classifier(path);
        CHECK(back.predict(probe) == clf.predict(probe));
        for (std::size_t i = 0; i < 50; ++i) CHECK(back.decision_score(probe.row(i)) == clf.decision_score(probe.row(i)));
        CHECK(classifier_to_json(back) == classifier_to_json(clf));
    }
}

TEST_CASE("malformed model files") {
    CHECK_THROWS_AS(classifier_from_json(nlohmann::json::parse(R"({"family": "svm"})")), ParseError);
    CHECK_THROWS_AS(classifier_from_json(nlohmann::json::parse(R"({"family": "knn"})")), ConfigError);
    CHECK_THROWS_AS(load_classifier("/nonexistent/dir/model.json"), IoError);
}

}
