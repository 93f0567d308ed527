#include "oracles.hpp"

#include "phishembed/classifiers.hpp"
#include "phishembed/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace phishembed;

namespace {

LabeledDataset noisy_data(Rng& rng, std::size_t n, std::size_t d) {
    LabeledDataset data;
    data.x = oracle::random_matrix(rng, n, d);
    for (std::size_t i = 0; i < n; ++i)
        data.y.push_back(data.x(i, 0) + 0.7 * standard_normal(rng) > 0 ? 1 : 0);
    return data;
}

}  // namespace

TEST_SUITE("logreg") {

TEST_CASE("zero weights give a coin flip that maps to the negative class") {
    LogRegModel m;
    m.weights = {0.0, 0.0, 0.0};
    const auto x = Matrix::from_rows({{1.0, -3.0}});
    CHECK(logreg_probability(m, x.row(0)) == 0.5);
    CHECK(logreg_predict(m, x) == std::vector<int>{0});
}

TEST_CASE("probabilities of the two classes sum to one") {
    LogRegModel m;
    m.weights = {0.8, -1.3, 0.2};
    Rng rng(4);
    const auto x = oracle::random_matrix(rng, 50, 2, 3.0);
    for (std::size_t i = 0; i < 50; ++i) {
        const double p = logreg_probability(m, x.row(i));
        const double z = 0.8 * x(i, 0) - 1.3 * x(i, 1) + 0.2;
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        CHECK(1.0 - p == doctest::Approx(1.0 / (1.0 + std::exp(z))));
    }
}

TEST_CASE("analytic gradient matches central differences") {
    Rng rng(12);
    for (double lambda : {0.0, 0.1, 2.0}) {
        const auto data = noisy_data(rng, 30, 4);
        std::vector<double> w(5);
        for (auto& v : w) v = standard_normal(rng);
        const auto g = logreg_gradient(data, w, lambda);
        const auto fd = oracle::central_difference([&](const std::vector<double>& p) {
            return logreg_loss(data, p, lambda);
        }, w);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(g[i] == doctest::Approx(fd[i]).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("loss never increases during training") {
    Rng rng(3);
    for (double lr : {0.01, 0.5, 50.0}) {
        const auto data = noisy_data(rng, 40, 3);
        LogRegOptions opt;
        opt.learning_rate = lr;
        opt.epochs = 300;
        opt.regularization_strength = 0.01;
        const auto m = logreg_fit(data, opt);
        REQUIRE(m.loss_history.size() == 301);
        CHECK(m.loss_history.front() == doctest::Approx(std::log(2.0)));
        for (std::size_t e = 1; e < m.loss_history.size(); ++e)
            CHECK(m.loss_history[e] <= m.loss_history[e - 1] + 1e-12);
        CHECK(m.effective_learning_rate <= lr);
    }
}

TEST_CASE("probability rises with a positively weighted feature") {
    Rng rng(7);
    const auto data = noisy_data(rng, 60, 2);
    const auto m = logreg_fit(data, {});
    REQUIRE(m.weights[0] > 0.0);
    double prev = 0.0;
    for (int i = -20; i <= 20; ++i) {
        const std::vector<double> x = {0.25 * i, 0.3};
        const double p = logreg_probability(m, x);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("fit separates a clean problem") {
    LabeledDataset d{Matrix::from_rows({{-2}, {-1}, {1}, {2}}), {0, 0, 1, 1}, {}};
    const auto m = logreg_fit(d, {});
    CHECK(logreg_predict(m, d.x) == d.y);
}

TEST_CASE("option checks") {
    LabeledDataset d{Matrix::from_rows({{-1}, {1}}), {0, 1}, {}};
    LogRegOptions o;
    o.learning_rate = 0.0;
    CHECK_THROWS_AS(logreg_fit(d, o), ConfigError);
    o = {};
    o.regularization_strength = -1.0;
    CHECK_THROWS_AS(logreg_fit(d, o), ConfigError);
    o = {};
    o.epochs = 0;
    CHECK_THROWS_AS(logreg_fit(d, o), ConfigError);
}

}
