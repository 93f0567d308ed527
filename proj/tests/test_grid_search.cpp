#include "oracles.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/grid_search.hpp"

#include <doctest.h>

using namespace phishembed;

namespace {

LabeledDataset noisy(std::uint64_t seed) {
    Rng rng(seed);
    LabeledDataset d;
    d.x = oracle::random_matrix(rng, 24, 2);
    for (std::size_t i = 0; i < 24; ++i) d.y.push_back(d.x(i, 0) + 0.8 * standard_normal(rng) > 0 ? 1 : 0);
    return d;
}

}  // namespace

TEST_SUITE("grid_search") {

TEST_CASE("default grid sizes") {
    CHECK(default_grid(ClassifierFamily::Svm).cardinality() == 68);
    CHECK(default_grid(ClassifierFamily::LogisticRegression).cardinality() == 4);
    CHECK(default_grid(ClassifierFamily::RandomForest).cardinality() == 72);
    CHECK(default_grid(ClassifierFamily::NaiveBayes).cardinality() == 1);
    for (auto f : kAllFamilies) {
        const auto g = default_grid(f);
        const auto configs = g.expand();
        CHECK(configs.size() == g.cardinality());
        for (const auto& c : configs) CHECK(family_of(c) == f);
    }
}

TEST_CASE("expansion order: last parameter fastest") {
    GridSpec g;
    g.family = ClassifierFamily::Svm;
    g.blocks = {{{"kernel", {"rbf"}}, {"C", {1.0, 2.0}}, {"gamma", {0.1, 0.2, 0.3}}}};
    const auto configs = g.expand();
    REQUIRE(configs.size() == 6);
    const auto& first = std::get<SvmParams>(configs[0]);
    const auto& second = std::get<SvmParams>(configs[1]);
    const auto& fourth = std::get<SvmParams>(configs[3]);
    CHECK(first.c == 1.0);
    CHECK(*first.gamma == 0.1);
    CHECK(second.c == 1.0);
    CHECK(*second.gamma == 0.2);
    CHECK(fourth.c == 2.0);
    CHECK(*fourth.gamma == 0.1);
    CHECK(grid_json(g).at("cardinality") == 6);
}

TEST_CASE("a one-point grid reproduces plain cross-validation") {
    const auto d = noisy(4);
    GridSpec g;
    g.family = ClassifierFamily::LogisticRegression;
    g.blocks = {{{"regularization_strength", {0.1}}}};
    const auto r = grid_search(d.x, d.y, g, 10, 3);
    REQUIRE(r.trials.size() == 1);
    CHECK(r.best_index == 0);
    const auto direct = cross_validate(d.x, d.y, LogRegParams{0.1}, 10, 3);
    CHECK(report_json(r.best().report) == report_json(direct));
}

TEST_CASE("the selected trial dominates every other trial") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto d = noisy(seed);
        for (auto f : {ClassifierFamily::Svm, ClassifierFamily::LogisticRegression}) {
            const auto r = grid_search(d.x, d.y, default_grid(f), 10, seed);
            // Independent scan for the first lexicographic maximum of (accuracy, f1).
            std::size_t expect = 0;
            for (std::size_t i = 1; i < r.trials.size(); ++i) {
                const auto& a = r.trials[i].report.mean;
                const auto& b = r.trials[expect].report.mean;
                if (a.accuracy > b.accuracy || (a.accuracy == b.accuracy && a.f1 > b.f1)) expect = i;
            }
            CHECK(r.best_index == expect);
            for (const auto& t : r.trials) CHECK(t.report.mean.accuracy <= r.best().report.mean.accuracy);
        }
    }
}

TEST_CASE("threads do not change the outcome") {
    const auto d = noisy(9);
    const auto g = default_grid(ClassifierFamily::Svm);
    const auto one = grid_search(d.x, d.y, g, 5, 2, true, 1);
    const auto two = grid_search(d.x, d.y, g, 5, 2, true, 3);
    REQUIRE(one.trials.size() == two.trials.size());
    CHECK(one.best_index == two.best_index);
    for (std::size_t i = 0; i < one.trials.size(); ++i)
        CHECK(report_json(one.trials[i].report) == report_json(two.trials[i].report));
}

TEST_CASE("bad grid values are reported") {
    GridSpec g;
    g.family = ClassifierFamily::Svm;
    g.blocks = {{{"kernel", {"cubic"}}, {"C", {1.0}}}};
    CHECK_THROWS_AS(g.expand(), ConfigError);
}

}
