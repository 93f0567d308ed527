#pragma once

#include "phishembed/linalg.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phishembed {

/// Features with binary labels (1 = phishing, the positive class).
struct LabeledDataset {
    Matrix x;
    std::vector<int> y;
    std::vector<std::string> doc_ids;

    std::size_t size() const noexcept { return y.size(); }
    /// Throws ConfigError unless rows agree and y is 0/1.
    void validate() const;
    bool has_both_classes() const;
};

// ---------------------------------------------------------------------------
// Support vector machine

enum class SvmKernel { Linear, Rbf, Polynomial, Sigmoid };

std::string_view to_string(SvmKernel kernel);
std::optional<SvmKernel> parse_svm_kernel(std::string_view name);

struct SvmKernelParams {
    SvmKernel kernel = SvmKernel::Rbf;
    double gamma = 1.0;
    int degree = 3;
    double coef0 = 0.0;
};

/// Kernel defaults: coef0 = 1 for polynomial, 0 for sigmoid.
SvmKernelParams make_kernel_params(SvmKernel kernel, double gamma, int degree = 3);

double svm_kernel(const SvmKernelParams& p, std::span<const double> a, std::span<const double> b);

struct SvmOptions {
    double c = 1.0;
    double tolerance = 1e-3;
    /// Cap on outer SMO passes over the data.
    int max_passes = 10000;
    std::uint64_t seed = 0;
};

struct SvmModel {
    SvmKernelParams kernel;
    double c = 1.0;
    Matrix support_vectors;
    /// alpha_i * y_i with y in {-1, +1}.
    std::vector<double> dual_coefs;
    /// Uncapped multipliers alpha_i of the support vectors.
    std::vector<double> alphas;
    double bias = 0.0;
    int passes = 0;
    bool converged = false;
};

SvmModel svm_fit(const LabeledDataset& data, const SvmKernelParams& kernel, const SvmOptions& options);
double svm_decision(const SvmModel& model, std::span<const double> x);
/// 1 iff decision > 0; an exact 0 maps to 0.
std::vector<int> svm_predict(const SvmModel& model, const Matrix& x);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij for
/// multipliers over the full training set.
double svm_dual_objective(const Matrix& x, const std::vector<int>& y, const SvmKernelParams& kernel,
                          std::span<const double> alphas);

/// Multipliers of `model` expanded back to the full training set.
std::vector<double> svm_full_alphas(const SvmModel& model, const Matrix& x);

/// Largest KKT violation of the fitted model on its training data.
double svm_max_kkt_violation(const SvmModel& model, const LabeledDataset& data);

// ---------------------------------------------------------------------------
// Logistic regression

struct LogRegOptions {
    double regularization_strength = 0.0;
    double learning_rate = 0.5;
    int epochs = 2000;
};

struct LogRegModel {
    /// d weights followed by the intercept.
    std::vector<double> weights;
    double regularization_strength = 0.0;
    double effective_learning_rate = 0.0;
    std::vector<double> loss_history;
};

/// Mean cross-entropy + (lambda/2)||w||^2 (intercept unpenalized).
double logreg_loss(const LabeledDataset& data, std::span<const double> weights, double lambda);
std::vector<double> logreg_gradient(const LabeledDataset& data, std::span<const double> weights, double lambda);

/// Full-batch gradient descent from zero weights. The step is capped at the
/// inverse of a Lipschitz bound of the loss so every epoch is a descent step.
LogRegModel logreg_fit(const LabeledDataset& data, const LogRegOptions& options);
double logreg_probability(const LogRegModel& model, std::span<const double> x);
std::vector<double> logreg_predict_proba(const LogRegModel& model, const Matrix& x);
/// 1 iff probability > 0.5.
std::vector<int> logreg_predict(const LogRegModel& model, const Matrix& x);

// ---------------------------------------------------------------------------
// Random forest

enum class SplitCriterion { Gini, Entropy };

std::string_view to_string(SplitCriterion c);
std::optional<SplitCriterion> parse_criterion(std::string_view name);

double gini_impurity(std::size_t negatives, std::size_t positives);
double entropy_impurity(std::size_t negatives, std::size_t positives);

struct ForestOptions {
    int n_estimators = 100;
    /// nullopt = grow until another rule stops the split.
    std::optional<int> max_depth;
    int min_samples_leaf = 1;
    int min_samples_split = 2;
    SplitCriterion criterion = SplitCriterion::Gini;
    std::uint64_t seed = 0;
};

struct TreeNode {
    /// -1 for leaves.
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    /// Training class counts at this node: [negatives, positives].
    std::size_t counts[2] = {0, 0};
    int depth = 0;

    bool is_leaf() const noexcept { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    int predict(std::span<const double> x) const;
    int depth() const;
};

struct RandomForestModel {
    std::vector<DecisionTree> trees;
    ForestOptions options;
    std::size_t n_features = 0;
};

RandomForestModel forest_fit(const LabeledDataset& data, const ForestOptions& options);
/// Fraction of trees voting phishing.
double forest_vote_fraction(const RandomForestModel& model, std::span<const double> x);
/// Majority vote; an even split maps to 0.
std::vector<int> forest_predict(const RandomForestModel& model, const Matrix& x);

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

struct GaussianNbModel {
    double priors[2] = {0.5, 0.5};
    std::vector<double> means[2];
    std::vector<double> variances[2];
    double variance_floor = 1e-9;
};

GaussianNbModel gnb_fit(const LabeledDataset& data, double variance_floor = 1e-9);
/// log P(C_k) + sum_i log N(x_i; mu_ki, sigma2_ki).
double gnb_joint_log_likelihood(const GaussianNbModel& model, int klass, std::span<const double> x);
/// Ties map to 0.
std::vector<int> gnb_predict(const GaussianNbModel& model, const Matrix& x);

}  // namespace phishembed
