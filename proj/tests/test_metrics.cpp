#include "oracles.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/metrics.hpp"

#include <doctest.h>

using namespace phishembed;

TEST_SUITE("metrics") {

TEST_CASE("one of each outcome") {
    const auto m = compute_metrics({1, 1, 0, 0});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
}

TEST_CASE("all-positive predictions on an imbalanced set") {
    const auto m = compute_metrics({3825, 0, 475, 0});
    CHECK(m.accuracy == doctest::Approx(0.8895).epsilon(1e-4));
    CHECK(m.precision == doctest::Approx(3825.0 / 4300.0));
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == doctest::Approx(0.9415).epsilon(1e-4));
}

TEST_CASE("no positive predictions or positives") {
    const auto m = compute_metrics({0, 10, 0, 0});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK_THROWS_AS(compute_metrics({}), ConfigError);
}

TEST_CASE("random matrices agree with counting") {
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        ConfusionMatrix cm{uniform_index(rng, 20), uniform_index(rng, 20), uniform_index(rng, 20),
                           uniform_index(rng, 20)};
        if (cm.total() == 0) continue;
        const auto m = compute_metrics(cm);
        const auto o = oracle::metrics_by_counting(cm, rng);
        CHECK(m.accuracy == o.accuracy);
        CHECK(m.precision == o.precision);
        CHECK(m.recall == o.recall);
        CHECK(m.f1 == doctest::Approx(o.f1).epsilon(1e-15));
        CHECK(m.accuracy >= 0.0);
        CHECK(m.accuracy <= 1.0);
        CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-15);
    }
}

TEST_CASE("confusion matrix from label vectors") {
    const auto cm = confusion_matrix({1, 1, 0, 0, 1, 0}, {1, 0, 0, 1, 1, 0});
    CHECK(cm == ConfusionMatrix{2, 2, 1, 1});
    ConfusionMatrix sum = cm;
    sum += cm;
    CHECK(sum.total() == 12);
    CHECK_THROWS_AS(confusion_matrix({1}, {1, 0}), DimensionError);
    CHECK_THROWS_AS(confusion_matrix({2}, {1}), ConfigError);
}

}
