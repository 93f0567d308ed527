#include "phishembed/metrics.hpp"

#include "phishembed/errors.hpp"

namespace phishembed {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) noexcept {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw ConfigError("metrics: confusion matrix is empty");
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    if (cm.tp + cm.fp > 0) m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    if (cm.tp + cm.fn > 0) m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) throw DimensionError("metrics: label vectors differ in length");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = truth[i];
        const int p = predicted[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1)) throw ConfigError("metrics: labels must be 0 or 1");
        if (t == 1) (p == 1 ? cm.tp : cm.fn) += 1;
        else (p == 1 ? cm.fp : cm.tn) += 1;
    }
    return cm;
}

}  // namespace phishembed
