#include "phishembed/classifiers.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/random.hpp"

#include <algorithm>
#include <cmath>

namespace phishembed {

void LabeledDataset::validate() const {
    if (x.rows() != y.size())
        throw ConfigError("dataset has " + std::to_string(x.rows()) + " rows but " + std::to_string(y.size()) +
                          " labels");
    for (int v : y)
        if (v != 0 && v != 1) throw ConfigError("labels must be 0 or 1");
    if (!doc_ids.empty() && doc_ids.size() != y.size()) throw ConfigError("doc_ids length does not match labels");
}

bool LabeledDataset::has_both_classes() const {
    const bool zero = std::find(y.begin(), y.end(), 0) != y.end();
    const bool one = std::find(y.begin(), y.end(), 1) != y.end();
    return zero && one;
}

std::string_view to_string(SvmKernel kernel) {
    switch (kernel) {
        case SvmKernel::Linear: return "linear";
        case SvmKernel::Rbf: return "rbf";
        case SvmKernel::Polynomial: return "poly";
        case SvmKernel::Sigmoid: return "sigmoid";
    }
    return "rbf";
}

std::optional<SvmKernel> parse_svm_kernel(std::string_view name) {
    if (name == "linear") return SvmKernel::Linear;
    if (name == "rbf") return SvmKernel::Rbf;
    if (name == "poly" || name == "polynomial") return SvmKernel::Polynomial;
    if (name == "sigmoid") return SvmKernel::Sigmoid;
    return std::nullopt;
}

SvmKernelParams make_kernel_params(SvmKernel kernel, double gamma, int degree) {
    SvmKernelParams p;
    p.kernel = kernel;
    p.gamma = gamma;
    p.degree = degree;
    p.coef0 = kernel == SvmKernel::Polynomial ? 1.0 : 0.0;
    return p;
}

double svm_kernel(const SvmKernelParams& p, std::span<const double> a, std::span<const double> b) {
    switch (p.kernel) {
        case SvmKernel::Linear: return dot(a, b);
        case SvmKernel::Rbf: return std::exp(-p.gamma * squared_distance(a, b));
        case SvmKernel::Polynomial: return std::pow(p.gamma * dot(a, b) + p.coef0, p.degree);
        case SvmKernel::Sigmoid: return std::tanh(p.gamma * dot(a, b) + p.coef0);
    }
    return 0.0;
}

namespace {

/// Platt's SMO with a full error cache. Internally u(x) = sum a_j y_j K(x_j, x) - b.
class SmoSolver {
public:
    SmoSolver(const LabeledDataset& data, const SvmKernelParams& kernel, const SvmOptions& options)
        : n_(data.size()), c_(options.c), tol_(options.tolerance), rng_(options.seed), alpha_(n_, 0.0),
          y_(n_), error_(n_), k_(n_, n_) {
        for (std::size_t i = 0; i < n_; ++i) y_[i] = data.y[i] == 1 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                k_(i, j) = svm_kernel(kernel, data.x.row(i), data.x.row(j));
                k_(j, i) = k_(i, j);
            }
        // u = 0 everywhere initially.
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];
    }

    void solve(int max_passes) {
        bool examine_all = true;
        std::size_t changed = 0;
        while ((changed > 0 || examine_all) && passes_ < max_passes) {
            changed = 0;
            for (std::size_t i = 0; i < n_; ++i)
                if (examine_all || is_free(i)) changed += examine(i);
            ++passes_;
            if (examine_all) examine_all = false;
            else if (changed == 0) examine_all = true;
        }
        converged_ = changed == 0 && !examine_all;
        refine_threshold();
    }

    const std::vector<double>& alphas() const { return alpha_; }
    double threshold() const { return b_; }
    int passes() const { return passes_; }
    bool converged() const { return converged_; }

private:
    bool is_free(std::size_t i) const { return alpha_[i] > bound_eps() && alpha_[i] < c_ - bound_eps(); }
    double bound_eps() const { return 1e-12 * std::max(1.0, c_); }

    int examine(std::size_t i2) {
        const double r2 = error_[i2] * y_[i2];
        if (!((r2 < -tol_ && alpha_[i2] < c_) || (r2 > tol_ && alpha_[i2] > 0.0))) return 0;

        std::size_t free_count = 0;
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!is_free(i)) continue;
            ++free_count;
            const double gap = std::abs(error_[i] - error_[i2]);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (free_count > 1 && best < n_ && take_step(best, i2)) return 1;

        const std::size_t start_free = static_cast<std::size_t>(uniform_index(rng_, n_));
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t i1 = (start_free + k) % n_;
            if (is_free(i1) && take_step(i1, i2)) return 1;
        }
        const std::size_t start_all = static_cast<std::size_t>(uniform_index(rng_, n_));
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t i1 = (start_all + k) % n_;
            if (take_step(i1, i2)) return 1;
        }
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c_, c_ + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c_);
            hi = std::min(c_, a1 + a2);
        }
        if (hi - lo <= 1e-15 * std::max(1.0, c_)) return false;

        const double k11 = k_(i1, i1), k12 = k_(i1, i2), k22 = k_(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double new_a2;
        if (eta > 1e-12) {
            new_a2 = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Objective along the constraint line is linear or concave: pick the better end.
            const double f1 = y1 * (e1 + b_) - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * (e2 + b_) - s * a1 * k12 - a2 * k22;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double lobj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double hobj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (lobj < hobj - 1e-12) new_a2 = lo;
            else if (lobj > hobj + 1e-12) new_a2 = hi;
            else new_a2 = a2;
        }
        if (std::abs(new_a2 - a2) < 1e-12 * (new_a2 + a2 + 1e-12)) return false;

        double new_a1 = a1 + s * (a2 - new_a2);
        if (new_a1 < 0.0) {
            new_a2 += s * new_a1;
            new_a1 = 0.0;
        } else if (new_a1 > c_) {
            new_a2 += s * (new_a1 - c_);
            new_a1 = c_;
        }

        const double d1 = y1 * (new_a1 - a1);
        const double d2 = y2 * (new_a2 - a2);
        const double b1 = e1 + d1 * k11 + d2 * k12 + b_;
        const double b2 = e2 + d1 * k12 + d2 * k22 + b_;
        double new_b;
        if (new_a1 > bound_eps() && new_a1 < c_ - bound_eps()) new_b = b1;
        else if (new_a2 > bound_eps() && new_a2 < c_ - bound_eps()) new_b = b2;
        else new_b = 0.5 * (b1 + b2);

        const double db = new_b - b_;
        for (std::size_t i = 0; i < n_; ++i) error_[i] += d1 * k_(i1, i) + d2 * k_(i2, i) - db;
        alpha_[i1] = new_a1;
        alpha_[i2] = new_a2;
        b_ = new_b;
        return true;
    }

    // Averages the threshold over free support vectors, which are exact on the margin.
    void refine_threshold() {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!is_free(i)) continue;
            double u = 0.0;
            for (std::size_t j = 0; j < n_; ++j) u += alpha_[j] * y_[j] * k_(j, i);
            sum += u - y_[i];
            ++count;
        }
        if (count > 0) b_ = sum / static_cast<double>(count);
    }

    std::size_t n_;
    double c_;
    double tol_;
    Rng rng_;
    std::vector<double> alpha_;
    std::vector<double> y_;
    std::vector<double> error_;
    Matrix k_;
    double b_ = 0.0;
    int passes_ = 0;
    bool converged_ = false;
};

}  // namespace

SvmModel svm_fit(const LabeledDataset& data, const SvmKernelParams& kernel, const SvmOptions& options) {
    data.validate();
    if (!data.has_both_classes()) throw ConfigError("svm_fit: training data contains a single class");
    if (!(options.c > 0.0)) throw ConfigError("svm_fit: C must be > 0");

    SmoSolver solver(data, kernel, options);
    solver.solve(options.max_passes);

    SvmModel model;
    model.kernel = kernel;
    model.c = options.c;
    model.bias = -solver.threshold();
    model.passes = solver.passes();
    model.converged = solver.converged();

    const auto& alpha = solver.alphas();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] > 0.0) support.push_back(i);
    model.support_vectors = data.x.select_rows(support);
    for (auto i : support) {
        model.alphas.push_back(alpha[i]);
        model.dual_coefs.push_back(data.y[i] == 1 ? alpha[i] : -alpha[i]);
    }
    return model;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
    if (!model.support_vectors.empty() && x.size() != model.support_vectors.cols())
        throw DimensionError("svm: feature dimension mismatch");
    double f = model.bias;
    for (std::size_t i = 0; i < model.dual_coefs.size(); ++i)
        f += model.dual_coefs[i] * svm_kernel(model.kernel, model.support_vectors.row(i), x);
    return f;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& x) {
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = svm_decision(model, x.row(i)) > 0.0 ? 1 : 0;
    return out;
}

double svm_dual_objective(const Matrix& x, const std::vector<int>& y, const SvmKernelParams& kernel,
                          std::span<const double> alphas) {
    const std::size_t n = y.size();
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        linear += alphas[i];
        const double yi = y[i] == 1 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double yj = y[j] == 1 ? 1.0 : -1.0;
            quad += alphas[i] * alphas[j] * yi * yj * svm_kernel(kernel, x.row(i), x.row(j));
        }
    }
    return linear - 0.5 * quad;
}

std::vector<double> svm_full_alphas(const SvmModel& model, const Matrix& x) {
    std::vector<double> full(x.rows(), 0.0);
    std::vector<bool> used(model.support_vectors.rows(), false);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t s = 0; s < model.support_vectors.rows(); ++s) {
            if (used[s]) continue;
            if (std::equal(x.row(i).begin(), x.row(i).end(), model.support_vectors.row(s).begin())) {
                full[i] = model.alphas[s];
                used[s] = true;
                break;
            }
        }
    }
    return full;
}

double svm_max_kkt_violation(const SvmModel& model, const LabeledDataset& data) {
    const auto alpha = svm_full_alphas(model, data.x);
    const double eps = 1e-8 * std::max(1.0, model.c);
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double yi = data.y[i] == 1 ? 1.0 : -1.0;
        const double margin = yi * svm_decision(model, data.x.row(i));
        double v;
        if (alpha[i] <= eps) v = std::max(0.0, 1.0 - margin);
        else if (alpha[i] >= model.c - eps) v = std::max(0.0, margin - 1.0);
        else v = std::abs(margin - 1.0);
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace phishembed
