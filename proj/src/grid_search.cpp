#include "phishembed/grid_search.hpp"

#include "phishembed/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace phishembed {

std::size_t GridSpec::cardinality() const {
    std::size_t total = 0;
    for (const auto& block : blocks) {
        std::size_t product = 1;
        for (const auto& [name, values] : block) product *= values.size();
        total += product;
    }
    return total;
}

std::vector<ClassifierConfig> GridSpec::expand() const {
    std::vector<ClassifierConfig> out;
    for (const auto& block : blocks) {
        bool empty = false;
        for (const auto& [name, values] : block) empty = empty || values.empty();
        if (empty) continue;
        std::vector<std::size_t> pos(block.size(), 0);
        while (true) {
            nlohmann::json params = nlohmann::json::object();
            for (std::size_t i = 0; i < block.size(); ++i) params[block[i].first] = block[i].second[pos[i]];
            out.push_back(config_from_json(family, params));
            // Odometer increment, last parameter fastest.
            bool done = true;
            for (std::size_t i = block.size(); i-- > 0;) {
                if (++pos[i] < block[i].second.size()) {
                    done = false;
                    break;
                }
                pos[i] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

GridSpec default_grid(ClassifierFamily family) {
    using nlohmann::json;
    const std::vector<json> cs = {0.1, 1.0, 10.0, 100.0};
    const std::vector<json> gammas = {0.01, 0.1, 1.0, "scale"};
    GridSpec g;
    g.family = family;
    switch (family) {
        case ClassifierFamily::Svm:
            g.blocks = {
                {{"kernel", {"linear"}}, {"C", cs}},
                {{"kernel", {"rbf"}}, {"C", cs}, {"gamma", gammas}},
                {{"kernel", {"poly"}}, {"C", cs}, {"degree", {2, 3}}, {"gamma", gammas}},
                {{"kernel", {"sigmoid"}}, {"C", cs}, {"gamma", gammas}},
            };
            break;
        case ClassifierFamily::LogisticRegression:
            g.blocks = {{{"regularization_strength", {0.0, 0.01, 0.1, 1.0}}}};
            break;
        case ClassifierFamily::RandomForest:
            g.blocks = {{{"n_estimators", {10, 50, 100}},
                         {"max_depth", {2, 4, nullptr}},
                         {"min_samples_leaf", {1, 2}},
                         {"min_samples_split", {2, 4}},
                         {"criterion", {"gini", "entropy"}}}};
            break;
        case ClassifierFamily::NaiveBayes:
            g.blocks = {{{"variance_floor", {1e-9}}}};
            break;
    }
    return g;
}

nlohmann::ordered_json grid_json(const GridSpec& grid) {
    nlohmann::ordered_json j;
    j["family"] = to_string(grid.family);
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& block : grid.blocks) {
        nlohmann::ordered_json b;
        for (const auto& [name, values] : block) b[name] = values;
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["cardinality"] = grid.cardinality();
    return j;
}

namespace {

bool better(const MetricsReport& a, const MetricsReport& b) {
    if (a.mean.accuracy != b.mean.accuracy) return a.mean.accuracy > b.mean.accuracy;
    return a.mean.f1 > b.mean.f1;
}

}  // namespace

GridSearchResult grid_search(const std::vector<FoldData>& folds, const GridSpec& grid, std::uint64_t seed,
                             std::size_t jobs) {
    const auto configs = grid.expand();
    if (configs.empty()) throw ConfigError("grid search: grid is empty");

    std::vector<std::optional<MetricsReport>> reports(configs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                reports[i] = cross_validate(folds, configs[i], seed);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, configs.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    GridSearchResult result;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        result.trials.push_back({configs[i], std::move(*reports[i])});
        if (i > 0 && better(result.trials[i].report, result.trials[result.best_index].report)) result.best_index = i;
    }
    return result;
}

GridSearchResult grid_search(const Matrix& x, const std::vector<int>& y, const GridSpec& grid, std::size_t k,
                             std::uint64_t seed, bool stratify, std::size_t jobs) {
    const auto folds = kfold_indices(y.size(), k, seed, stratify ? &y : nullptr);
    return grid_search(split_folds(x, y, folds), grid, seed, jobs);
}

}  // namespace phishembed
