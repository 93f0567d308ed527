#include "oracles.hpp"

#include "phishembed/classifiers.hpp"
#include "phishembed/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace phishembed;

namespace {

LabeledDataset blobs(Rng& rng, std::size_t n) {
    LabeledDataset d;
    d.x = oracle::random_matrix(rng, n, 4);
    for (std::size_t i = 0; i < n; ++i) d.y.push_back(d.x(i, 0) - d.x(i, 2) > 0.2 ? 1 : 0);
    return d;
}

}  // namespace

TEST_SUITE("forest") {

TEST_CASE("impurity values") {
    CHECK(gini_impurity(5, 0) == 0.0);
    CHECK(gini_impurity(0, 7) == 0.0);
    CHECK(gini_impurity(3, 3) == doctest::Approx(0.5));
    CHECK(entropy_impurity(3, 3) == doctest::Approx(1.0));
    CHECK(entropy_impurity(4, 0) == 0.0);
    CHECK(entropy_impurity(1, 3) == doctest::Approx(-(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75))));
}

TEST_CASE("a single split finds the midpoint") {
    LabeledDataset d{Matrix::from_rows({{0.0}, {0.0}, {1.0}, {1.0}}), {0, 0, 1, 1}, {}};
    // Every bootstrap of this set that holds both classes splits at 0.5.
    ForestOptions o;
    o.n_estimators = 1;
    o.max_depth = 1;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        o.seed = seed;
        const auto f = forest_fit(d, o);
        const auto& root = f.trees[0].nodes[0];
        if (root.counts[0] && root.counts[1]) {
            CHECK(root.feature == 0);
            CHECK(root.threshold == 0.5);
            CHECK(f.trees[0].depth() == 1);
        } else {
            CHECK(root.is_leaf());
        }
    }
}

TEST_CASE("pure data grows single-leaf trees") {
    LabeledDataset d{Matrix::from_rows({{0.0}, {1.0}, {2.0}}), {1, 1, 1}, {}};
    ForestOptions o;
    o.n_estimators = 3;
    const auto f = forest_fit(d, o);
    for (const auto& t : f.trees) {
        CHECK(t.nodes.size() == 1);
        CHECK(t.depth() == 0);
    }
    CHECK(forest_predict(f, d.x) == std::vector<int>{1, 1, 1});
}

TEST_CASE("fits are deterministic and seed dependent") {
    Rng rng(2);
    const auto d = blobs(rng, 40);
    ForestOptions o;
    o.n_estimators = 15;
    o.seed = 9;
    const auto a = forest_fit(d, o);
    const auto b = forest_fit(d, o);
    REQUIRE(a.trees.size() == 15);
    bool same = true;
    for (std::size_t t = 0; t < 15; ++t) {
        same = same && a.trees[t].nodes.size() == b.trees[t].nodes.size();
        for (std::size_t k = 0; same && k < a.trees[t].nodes.size(); ++k)
            same = a.trees[t].nodes[k].feature == b.trees[t].nodes[k].feature &&
                   a.trees[t].nodes[k].threshold == b.trees[t].nodes[k].threshold;
    }
    CHECK(same);
    CHECK(forest_predict(a, d.x) == forest_predict(b, d.x));
}

TEST_CASE("growth limits hold in every tree") {
    Rng rng(6);
    const auto d = blobs(rng, 60);
    for (int depth : {1, 2, 3}) {
        for (int leaf : {1, 3, 5}) {
            ForestOptions o;
            o.n_estimators = 10;
            o.max_depth = depth;
            o.min_samples_leaf = leaf;
            o.min_samples_split = 4;
            o.criterion = leaf == 3 ? SplitCriterion::Entropy : SplitCriterion::Gini;
            const auto f = forest_fit(d, o);
            for (const auto& t : f.trees) {
                CHECK(t.depth() <= depth);
                for (const auto& n : t.nodes) {
                    if (n.is_leaf()) {
                        CHECK(n.counts[0] + n.counts[1] >= static_cast<std::size_t>(leaf));
                    } else {
                        CHECK(n.counts[0] + n.counts[1] >= 4u);
                        CHECK(n.counts[0] > 0);
                        CHECK(n.counts[1] > 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("children partition their parent") {
    Rng rng(13);
    const auto d = blobs(rng, 50);
    ForestOptions o;
    o.n_estimators = 5;
    const auto f = forest_fit(d, o);
    for (const auto& t : f.trees)
        for (const auto& n : t.nodes)
            if (!n.is_leaf()) {
                const auto& l = t.nodes[static_cast<std::size_t>(n.left)];
                const auto& r = t.nodes[static_cast<std::size_t>(n.right)];
                CHECK(l.counts[0] + r.counts[0] == n.counts[0]);
                CHECK(l.counts[1] + r.counts[1] == n.counts[1]);
                CHECK(l.depth == n.depth + 1);
            }
}

TEST_CASE("voting") {
    DecisionTree yes, no;
    yes.nodes.push_back(TreeNode{});
    yes.nodes[0].counts[1] = 3;
    no.nodes.push_back(TreeNode{});
    no.nodes[0].counts[0] = 3;
    CHECK(yes.predict(std::vector<double>{0.0}) == 1);
    CHECK(no.predict(std::vector<double>{0.0}) == 0);

    RandomForestModel unanimous;
    unanimous.n_features = 1;
    unanimous.trees = {yes, yes, yes};
    const auto x = Matrix::from_rows({{0.0}});
    CHECK(forest_vote_fraction(unanimous, x.row(0)) == 1.0);
    CHECK(forest_predict(unanimous, x) == std::vector<int>{1});

    RandomForestModel split;
    split.n_features = 1;
    split.trees = {yes, no, yes, no};
    CHECK(forest_vote_fraction(split, x.row(0)) == 0.5);
    CHECK(forest_predict(split, x) == std::vector<int>{0});

    DecisionTree tie;
    tie.nodes.push_back(TreeNode{});
    tie.nodes[0].counts[0] = tie.nodes[0].counts[1] = 2;
    CHECK(tie.predict(std::vector<double>{0.0}) == 0);
}

TEST_CASE("a one-tree forest predicts like its tree") {
    Rng rng(17);
    const auto d = blobs(rng, 30);
    ForestOptions o;
    o.n_estimators = 1;
    const auto f = forest_fit(d, o);
    const auto p = forest_predict(f, d.x);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(p[i] == f.trees[0].predict(d.x.row(i)));
}

TEST_CASE("criterion names") {
    CHECK(parse_criterion("entropy") == SplitCriterion::Entropy);
    CHECK(to_string(SplitCriterion::Gini) == "gini");
    CHECK_FALSE(parse_criterion("mse").has_value());
}

}
