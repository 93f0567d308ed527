#pragma once

#include <cstddef>
#include <vector>

namespace phishembed {

/// Positive class is phishing (label 1).
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept;
    bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision, recall and F1 fall back to 0 when their denominators vanish.
/// Throws ConfigError on an empty matrix.
Metrics compute_metrics(const ConfusionMatrix& cm);

/// Throws DimensionError on length mismatch and ConfigError on labels outside {0, 1}.
ConfusionMatrix confusion_matrix(const std::vector<int>& truth, const std::vector<int>& predicted);

}  // namespace phishembed
