#include "phishembed/classifiers.hpp"

#include "phishembed/errors.hpp"

#include <algorithm>
#include <cmath>

namespace phishembed {

namespace {

double linear_score(std::span<const double> w, std::span<const double> x) {
    double z = w[x.size()];
    for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
    return z;
}

// log(1 + e^z) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_weights(const LabeledDataset& data, std::span<const double> w) {
    if (w.size() != data.x.cols() + 1) throw DimensionError("logistic regression: weight vector has wrong length");
}

}  // namespace

double logreg_loss(const LabeledDataset& data, std::span<const double> weights, double lambda) {
    check_weights(data, weights);
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double z = linear_score(weights, data.x.row(i));
        loss += softplus(z) - data.y[i] * z;
    }
    loss /= static_cast<double>(data.size());
    double penalty = 0.0;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) penalty += weights[j] * weights[j];
    return loss + 0.5 * lambda * penalty;
}

std::vector<double> logreg_gradient(const LabeledDataset& data, std::span<const double> weights, double lambda) {
    check_weights(data, weights);
    const std::size_t d = data.x.cols();
    std::vector<double> g(d + 1, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.x.row(i);
        const double r = sigmoid(linear_score(weights, x)) - data.y[i];
        for (std::size_t j = 0; j < d; ++j) g[j] += r * x[j];
        g[d] += r;
    }
    const double n = static_cast<double>(data.size());
    for (auto& v : g) v /= n;
    for (std::size_t j = 0; j < d; ++j) g[j] += lambda * weights[j];
    return g;
}

LogRegModel logreg_fit(const LabeledDataset& data, const LogRegOptions& options) {
    data.validate();
    if (data.size() == 0) throw ConfigError("logistic regression: empty training set");
    if (options.regularization_strength < 0.0) throw ConfigError("logistic regression: lambda must be >= 0");
    if (!(options.learning_rate > 0.0)) throw ConfigError("logistic regression: learning rate must be > 0");
    if (options.epochs < 1) throw ConfigError("logistic regression: epochs must be >= 1");

    // Hessian of the mean loss is bounded by 1/4 * mean ||x~||^2 + lambda.
    double sq = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.x.row(i);
        sq += dot(x, x) + 1.0;
    }
    const double lipschitz = 0.25 * sq / static_cast<double>(data.size()) + options.regularization_strength;

    LogRegModel model;
    model.regularization_strength = options.regularization_strength;
    model.effective_learning_rate = std::min(options.learning_rate, 1.0 / lipschitz);
    model.weights.assign(data.x.cols() + 1, 0.0);
    model.loss_history.reserve(static_cast<std::size_t>(options.epochs) + 1);
    model.loss_history.push_back(logreg_loss(data, model.weights, model.regularization_strength));

    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        const auto g = logreg_gradient(data, model.weights, model.regularization_strength);
        for (std::size_t j = 0; j < g.size(); ++j) model.weights[j] -= model.effective_learning_rate * g[j];
        const double loss = logreg_loss(data, model.weights, model.regularization_strength);
        if (!std::isfinite(loss)) throw NumericError("logistic regression: loss became non-finite");
        model.loss_history.push_back(loss);
    }
    return model;
}

double logreg_probability(const LogRegModel& model, std::span<const double> x) {
    if (x.size() + 1 != model.weights.size()) throw DimensionError("logistic regression: feature dimension mismatch");
    return sigmoid(linear_score(model.weights, x));
}

std::vector<double> logreg_predict_proba(const LogRegModel& model, const Matrix& x) {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = logreg_probability(model, x.row(i));
    return out;
}

std::vector<int> logreg_predict(const LogRegModel& model, const Matrix& x) {
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = logreg_probability(model, x.row(i)) > 0.5 ? 1 : 0;
    return out;
}

}  // namespace phishembed
