#include "phishembed/boundary.hpp"

#include "phishembed/errors.hpp"

#include <algorithm>
#include <cmath>

namespace phishembed {

double AxisRange::at(std::size_t i) const {
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

std::size_t AxisRange::nearest(double v) const {
    const double step = (max - min) / static_cast<double>(resolution - 1);
    const double pos = std::round((v - min) / step);
    return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(resolution - 1)));
}

namespace {

AxisRange padded_range(const Matrix& x, std::size_t col, std::size_t resolution) {
    double lo = x(0, col), hi = x(0, col);
    for (std::size_t r = 1; r < x.rows(); ++r) {
        lo = std::min(lo, x(r, col));
        hi = std::max(hi, x(r, col));
    }
    // A flat axis still gets a visible band around the points.
    const double margin = hi > lo ? 0.05 * (hi - lo) : 0.5;
    return {lo - margin, hi + margin, resolution};
}

}  // namespace

BoundaryGrid decision_boundary_grid(const TrainedClassifier& clf, const Matrix& x, const std::vector<int>& labels,
                                    const std::vector<std::string>& doc_ids, std::size_t resolution) {
    if (resolution < 2) throw ConfigError("boundary grid: resolution must be at least 2");
    if (x.cols() != 2) throw DimensionError("boundary grid: data must be 2-D");
    if (x.rows() == 0) throw ConfigError("boundary grid: no points");
    if (labels.size() != x.rows() || (!doc_ids.empty() && doc_ids.size() != x.rows()))
        throw DimensionError("boundary grid: labels/ids do not match the points");

    BoundaryGrid g;
    g.x_range = padded_range(x, 0, resolution);
    g.y_range = padded_range(x, 1, resolution);

    Matrix lattice(resolution * resolution, 2);
    for (std::size_t r = 0; r < resolution; ++r)
        for (std::size_t c = 0; c < resolution; ++c) {
            lattice(r * resolution + c, 0) = g.x_range.at(c);
            lattice(r * resolution + c, 1) = g.y_range.at(r);
        }
    const auto labels_flat = clf.predict(lattice);
    g.predictions.assign(resolution, std::vector<int>(resolution, 0));
    for (std::size_t r = 0; r < resolution; ++r)
        for (std::size_t c = 0; c < resolution; ++c) g.predictions[r][c] = labels_flat[r * resolution + c];

    for (std::size_t i = 0; i < x.rows(); ++i)
        g.scatter.push_back({doc_ids.empty() ? std::to_string(i) : doc_ids[i], x(i, 0), x(i, 1), labels[i]});
    return g;
}

}  // namespace phishembed
