#include "phishembed/classifiers.hpp"

#include "phishembed/errors.hpp"

#include <cmath>
#include <numbers>

namespace phishembed {

GaussianNbModel gnb_fit(const LabeledDataset& data, double variance_floor) {
    data.validate();
    if (!(variance_floor > 0.0)) throw ConfigError("naive bayes: variance floor must be > 0");
    if (!data.has_both_classes()) throw ConfigError("naive bayes: training data contains a single class");

    const std::size_t d = data.x.cols();
    GaussianNbModel model;
    model.variance_floor = variance_floor;
    std::size_t counts[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
        model.means[k].assign(d, 0.0);
        model.variances[k].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int k = data.y[i];
        ++counts[k];
        for (std::size_t j = 0; j < d; ++j) model.means[k][j] += data.x(i, j);
    }
    for (int k = 0; k < 2; ++k)
        for (auto& m : model.means[k]) m /= static_cast<double>(counts[k]);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int k = data.y[i];
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = data.x(i, j) - model.means[k][j];
            model.variances[k][j] += diff * diff;
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (auto& v : model.variances[k]) v = std::max(v / static_cast<double>(counts[k]), variance_floor);
        model.priors[k] = static_cast<double>(counts[k]) / static_cast<double>(data.size());
    }
    return model;
}

double gnb_joint_log_likelihood(const GaussianNbModel& model, int klass, std::span<const double> x) {
    if (klass != 0 && klass != 1) throw ConfigError("naive bayes: class must be 0 or 1");
    const auto& mean = model.means[klass];
    const auto& var = model.variances[klass];
    if (x.size() != mean.size()) throw DimensionError("naive bayes: feature dimension mismatch");
    double ll = std::log(model.priors[klass]);
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = x[j] - mean[j];
        ll += -0.5 * std::log(2.0 * std::numbers::pi * var[j]) - diff * diff / (2.0 * var[j]);
    }
    return ll;
}

std::vector<int> gnb_predict(const GaussianNbModel& model, const Matrix& x) {
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        out[i] = gnb_joint_log_likelihood(model, 1, x.row(i)) > gnb_joint_log_likelihood(model, 0, x.row(i)) ? 1 : 0;
    return out;
}

}  // namespace phishembed
