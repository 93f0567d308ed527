#pragma once

#include "phishembed/cross_validation.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace phishembed {

/// One Cartesian block: parameter name -> candidate values, in declared order.
using ParamGrid = std::vector<std::pair<std::string, std::vector<nlohmann::json>>>;

/// A union of Cartesian blocks (kernels that take different parameters get
/// their own block). Trial count is the sum of the block products.
struct GridSpec {
    ClassifierFamily family = ClassifierFamily::Svm;
    std::vector<ParamGrid> blocks;

    std::size_t cardinality() const;
    /// Every configuration, block by block; the first parameter varies slowest.
    std::vector<ClassifierConfig> expand() const;
};

GridSpec default_grid(ClassifierFamily family);
nlohmann::ordered_json grid_json(const GridSpec& grid);

struct GridTrial {
    ClassifierConfig config;
    MetricsReport report;
};

struct GridSearchResult {
    std::vector<GridTrial> trials;
    std::size_t best_index = 0;

    const GridTrial& best() const { return trials.at(best_index); }
};

/// Highest mean accuracy, then highest mean F1, then earliest in grid order.
/// Trials may run on `jobs` threads; the log is always in grid order.
GridSearchResult grid_search(const std::vector<FoldData>& folds, const GridSpec& grid, std::uint64_t seed,
                             std::size_t jobs = 1);

GridSearchResult grid_search(const Matrix& x, const std::vector<int>& y, const GridSpec& grid, std::size_t k,
                             std::uint64_t seed, bool stratify = true, std::size_t jobs = 1);

}  // namespace phishembed
