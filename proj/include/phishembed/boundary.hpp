#pragma once

#include "phishembed/classifier.hpp"

#include <string>
#include <vector>

namespace phishembed {

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    std::size_t resolution = 0;

    double at(std::size_t i) const;
    /// Index of the lattice coordinate closest to v (clamped to the range).
    std::size_t nearest(double v) const;
};

struct ScatterPoint {
    std::string doc_id;
    double x = 0.0;
    double y = 0.0;
    int label = 0;
};

/// Classifier labels sampled on a square lattice around 2-D data.
struct BoundaryGrid {
    AxisRange x_range;
    AxisRange y_range;
    /// predictions[row][col]: row walks y, col walks x.
    std::vector<std::vector<int>> predictions;
    std::vector<ScatterPoint> scatter;
};

/// Lattice spans the data bounds plus a 5% margin on each side.
/// Throws ConfigError if resolution < 2, DimensionError unless x has 2 columns.
BoundaryGrid decision_boundary_grid(const TrainedClassifier& clf, const Matrix& x, const std::vector<int>& labels,
                                    const std::vector<std::string>& doc_ids, std::size_t resolution);

}  // namespace phishembed
