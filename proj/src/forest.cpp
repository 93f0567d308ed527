#include "phishembed/classifiers.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phishembed {

std::string_view to_string(SplitCriterion c) { return c == SplitCriterion::Gini ? "gini" : "entropy"; }

std::optional<SplitCriterion> parse_criterion(std::string_view name) {
    if (name == "gini") return SplitCriterion::Gini;
    if (name == "entropy") return SplitCriterion::Entropy;
    return std::nullopt;
}

double gini_impurity(std::size_t negatives, std::size_t positives) {
    const double n = static_cast<double>(negatives + positives);
    if (n == 0.0) return 0.0;
    const double p = positives / n;
    const double q = negatives / n;
    return 1.0 - p * p - q * q;
}

double entropy_impurity(std::size_t negatives, std::size_t positives) {
    const double n = static_cast<double>(negatives + positives);
    if (n == 0.0) return 0.0;
    double h = 0.0;
    for (auto c : {negatives, positives}) {
        if (c == 0) continue;
        const double p = c / n;
        h -= p * std::log2(p);
    }
    return h;
}

int DecisionTree::predict(std::span<const double> x) const {
    int at = 0;
    while (!nodes[at].is_leaf()) {
        const auto& node = nodes[at];
        at = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    const auto& leaf = nodes[at];
    return leaf.counts[1] > leaf.counts[0] ? 1 : 0;
}

int DecisionTree::depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

namespace {

// Scores within this distance count as equal so float noise cannot override the tie rule.
constexpr double kTieEps = 1e-12;

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const LabeledDataset& data, const ForestOptions& options, Rng& rng)
        : data_(data), options_(options), rng_(rng),
          n_candidates_(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.x.cols()))))) {}

    DecisionTree build(std::vector<std::size_t> sample) {
        tree_.nodes.clear();
        grow(std::move(sample), 0);
        return std::move(tree_);
    }

private:
    double impurity(std::size_t neg, std::size_t pos) const {
        return options_.criterion == SplitCriterion::Gini ? gini_impurity(neg, pos) : entropy_impurity(neg, pos);
    }

    int grow(std::vector<std::size_t> sample, int depth) {
        const int id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();
        TreeNode node;
        node.depth = depth;
        for (auto i : sample) ++node.counts[data_.y[i]];

        const bool pure = node.counts[0] == 0 || node.counts[1] == 0;
        const bool depth_capped = options_.max_depth && depth >= *options_.max_depth;
        const bool too_small = sample.size() < static_cast<std::size_t>(options_.min_samples_split);
        if (pure || depth_capped || too_small) {
            tree_.nodes[id] = node;
            return id;
        }

        const auto best = find_split(sample, node);
        if (!best) {
            tree_.nodes[id] = node;
            return id;
        }

        std::vector<std::size_t> left, right;
        for (auto i : sample) (data_.x(i, best->feature) <= best->threshold ? left : right).push_back(i);
        node.feature = best->feature;
        node.threshold = best->threshold;
        tree_.nodes[id] = node;
        const int l = grow(std::move(left), depth + 1);
        const int r = grow(std::move(right), depth + 1);
        tree_.nodes[id].left = l;
        tree_.nodes[id].right = r;
        return id;
    }

    std::vector<int> draw_features() {
        std::vector<int> features(data_.x.cols());
        std::iota(features.begin(), features.end(), 0);
        const std::size_t k = std::min(n_candidates_, features.size());
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = i + static_cast<std::size_t>(uniform_index(rng_, features.size() - i));
            std::swap(features[i], features[j]);
        }
        features.resize(k);
        std::sort(features.begin(), features.end());
        return features;
    }

    std::optional<Split> find_split(const std::vector<std::size_t>& sample, const TreeNode& node) {
        const double parent = impurity(node.counts[0], node.counts[1]);
        const std::size_t n = sample.size();
        const auto min_leaf = static_cast<std::size_t>(std::max(1, options_.min_samples_leaf));
        std::optional<Split> best;

        std::vector<std::pair<double, int>> column(n);
        for (int f : draw_features()) {
            for (std::size_t k = 0; k < n; ++k) column[k] = {data_.x(sample[k], f), data_.y[sample[k]]};
            std::sort(column.begin(), column.end());
            std::size_t left[2] = {0, 0};
            for (std::size_t k = 0; k + 1 < n; ++k) {
                ++left[column[k].second];
                if (column[k].first == column[k + 1].first) continue;
                const std::size_t nl = k + 1;
                const std::size_t nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const std::size_t right_neg = node.counts[0] - left[0];
                const std::size_t right_pos = node.counts[1] - left[1];
                const double score = (nl * impurity(left[0], left[1]) + nr * impurity(right_neg, right_pos)) /
                                     static_cast<double>(n);
                // Features and thresholds arrive in ascending order, so strict improvement keeps the lowest.
                if (!best || score < best->impurity - kTieEps)
                    best = Split{f, 0.5 * (column[k].first + column[k + 1].first), score};
            }
        }
        if (best && parent - best->impurity <= kTieEps) return std::nullopt;
        return best;
    }

    const LabeledDataset& data_;
    const ForestOptions& options_;
    Rng& rng_;
    std::size_t n_candidates_;
    DecisionTree tree_;
};

}  // namespace

RandomForestModel forest_fit(const LabeledDataset& data, const ForestOptions& options) {
    data.validate();
    if (data.size() == 0) throw ConfigError("random forest: empty training set");
    if (options.n_estimators < 1) throw ConfigError("random forest: n_estimators must be >= 1");
    if (options.max_depth && *options.max_depth < 0) throw ConfigError("random forest: max_depth must be >= 0");
    if (options.min_samples_leaf < 1) throw ConfigError("random forest: min_samples_leaf must be >= 1");
    if (options.min_samples_split < 2) throw ConfigError("random forest: min_samples_split must be >= 2");

    RandomForestModel model;
    model.options = options;
    model.n_features = data.x.cols();
    Rng rng(options.seed);
    TreeBuilder builder(data, options, rng);
    const std::size_t n = data.size();
    for (int t = 0; t < options.n_estimators; ++t) {
        std::vector<std::size_t> sample(n);
        for (auto& s : sample) s = static_cast<std::size_t>(uniform_index(rng, n));
        model.trees.push_back(builder.build(std::move(sample)));
    }
    return model;
}

double forest_vote_fraction(const RandomForestModel& model, std::span<const double> x) {
    if (x.size() != model.n_features) throw DimensionError("random forest: feature dimension mismatch");
    if (model.trees.empty()) return 0.0;
    std::size_t votes = 0;
    for (const auto& tree : model.trees) votes += static_cast<std::size_t>(tree.predict(x));
    return static_cast<double>(votes) / static_cast<double>(model.trees.size());
}

std::vector<int> forest_predict(const RandomForestModel& model, const Matrix& x) {
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::size_t votes = 0;
        for (const auto& tree : model.trees) votes += static_cast<std::size_t>(tree.predict(x.row(i)));
        out[i] = 2 * votes > model.trees.size() ? 1 : 0;
    }
    return out;
}

}  // namespace phishembed
