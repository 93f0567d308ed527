#include "phishembed/projection.hpp"

#include "phishembed/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace phishembed {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr double kRankTolerance = 1e-10;

void check_residual(const Matrix& a, const SymmetricEigen& eig, std::size_t count, const char* what) {
    const double r = max_eigen_residual(a, eig, count);
    if (!(r < kResidualTolerance))
        throw NumericError(std::string(what) + ": eigen residual " + std::to_string(r) + " exceeds tolerance");
}

}  // namespace

PcaModel fit_pca(const Matrix& x, std::size_t m) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) throw ConfigError("fit_pca needs at least 2 samples");
    if (m < 1 || m > std::min(n - 1, d))
        throw ConfigError("fit_pca: m=" + std::to_string(m) + " must be in [1, min(n-1, d)]");

    PcaModel model;
    model.m = m;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) model.mean[j] += x(i, j);
    for (double& v : model.mean) v /= static_cast<double>(n);

    Matrix cov(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            const double da = x(i, a) - model.mean[a];
            for (std::size_t b = a; b < d; ++b) cov(a, b) += da * (x(i, b) - model.mean[b]);
        }
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            cov(a, b) /= static_cast<double>(n - 1);
            cov(b, a) = cov(a, b);
        }

    const SymmetricEigen eig = jacobi_eigen(cov);
    check_residual(cov, eig, d, "fit_pca");

    const double top = std::max(eig.values.front(), 0.0);
    const auto rank = static_cast<std::size_t>(std::count_if(
        eig.values.begin(), eig.values.end(), [&](double v) { return top > 0.0 && v > kRankTolerance * top; }));
    if (rank < m)
        throw NumericError("fit_pca: data rank " + std::to_string(rank) + " is below m=" + std::to_string(m));

    model.explained_variance.resize(d);
    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        model.explained_variance[j] = std::max(eig.values[j], 0.0);
        total += model.explained_variance[j];
    }
    model.explained_variance_ratio.resize(d);
    for (std::size_t j = 0; j < d; ++j) model.explained_variance_ratio[j] = model.explained_variance[j] / total;

    model.components = Matrix(m, d);
    for (std::size_t c = 0; c < m; ++c) {
        auto row = model.components.row(c);
        for (std::size_t j = 0; j < d; ++j) row[j] = eig.vectors(j, c);
        canonicalize_sign(row);
    }
    return model;
}

Matrix transform_pca(const PcaModel& model, const Matrix& x) {
    const std::size_t d = model.mean.size();
    if (x.rows() > 0 && x.cols() != d)
        throw DimensionError("transform_pca: expected " + std::to_string(d) + " columns, got " +
                             std::to_string(x.cols()));
    Matrix out(x.rows(), model.m);
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) centered[j] = x(i, j) - model.mean[j];
        for (std::size_t c = 0; c < model.m; ++c) out(i, c) = dot(centered, model.components.row(c));
    }
    return out;
}

std::vector<double> cumulative_variance_curve(const PcaModel& model) {
    std::vector<double> curve(model.explained_variance_ratio.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        acc += model.explained_variance_ratio[i];
        curve[i] = acc;
    }
    return curve;
}

std::size_t components_for_variance(const std::vector<double>& curve, double threshold) {
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i] >= threshold) return i + 1;
    return 0;
}

// ---------------------------------------------------------------------------
// Kernel PCA

double kernel_value(PcaKernel kernel, double gamma, std::span<const double> a, std::span<const double> b) {
    if (kernel == PcaKernel::Linear) return dot(a, b);
    return std::exp(-gamma * squared_distance(a, b));
}

Matrix kernel_matrix(PcaKernel kernel, double gamma, const Matrix& x) {
    const std::size_t n = x.rows();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            k(i, j) = kernel_value(kernel, gamma, x.row(i), x.row(j));
            k(j, i) = k(i, j);
        }
    return k;
}

Matrix double_center(const Matrix& k) {
    const std::size_t n = k.rows();
    std::vector<double> row_mean(n, 0.0);
    std::vector<double> col_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            row_mean[i] += k(i, j);
            col_mean[j] += k(i, j);
            grand += k(i, j);
        }
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        row_mean[i] /= dn;
        col_mean[i] /= dn;
    }
    grand /= dn * dn;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = k(i, j) - row_mean[i] - col_mean[j] + grand;
    return out;
}

double default_rbf_gamma(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n == 0 || d == 0) return 1.0;
    double mean_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mu = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu += x(i, j);
        mu /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (x(i, j) - mu) * (x(i, j) - mu);
        mean_var += var / static_cast<double>(n);
    }
    mean_var /= static_cast<double>(d);
    if (!(mean_var > 0.0)) return 1.0;
    return 1.0 / (static_cast<double>(d) * mean_var);
}

KernelPcaModel fit_kernel_pca(const Matrix& x, std::size_t m, double gamma, PcaKernel kernel) {
    const std::size_t n = x.rows();
    if (n < 2) throw ConfigError("fit_kernel_pca needs at least 2 samples");
    if (m < 1 || m > n - 1) throw ConfigError("fit_kernel_pca: m must be in [1, n-1]");
    if (kernel == PcaKernel::Rbf && !(gamma > 0.0)) throw ConfigError("fit_kernel_pca: gamma must be > 0");

    KernelPcaModel model;
    model.kernel = kernel;
    model.training_data = x;
    model.gamma = gamma;
    model.m = m;

    const Matrix k = kernel_matrix(kernel, gamma, x);
    model.kernel_row_means.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) model.kernel_row_means[i] += k(i, j);
        model.kernel_row_means[i] /= static_cast<double>(n);
        model.kernel_grand_mean += model.kernel_row_means[i];
    }
    model.kernel_grand_mean /= static_cast<double>(n);

    const Matrix centered = double_center(k);
    const SymmetricEigen eig = jacobi_eigen(centered);
    check_residual(centered, eig, m, "fit_kernel_pca");

    const double top = eig.values.front();
    const auto positive = static_cast<std::size_t>(std::count_if(
        eig.values.begin(), eig.values.end(), [&](double v) { return top > 0.0 && v > kRankTolerance * top; }));
    if (positive < m)
        throw NumericError("fit_kernel_pca: only " + std::to_string(positive) +
                           " positive eigenvalues, need m=" + std::to_string(m));

    model.alphas = Matrix(m, n);
    model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(m));
    for (std::size_t c = 0; c < m; ++c) {
        auto row = model.alphas.row(c);
        for (std::size_t i = 0; i < n; ++i) row[i] = eig.vectors(i, c);
        canonicalize_sign(row);
        const double scale = 1.0 / std::sqrt(eig.values[c]);
        for (double& a : row) a *= scale;
    }

    model.training_projection = Matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < m; ++c) model.training_projection(i, c) = dot(centered.row(i), model.alphas.row(c));
    return model;
}

Matrix transform_kernel_pca(const KernelPcaModel& model, const Matrix& x) {
    const std::size_t n = model.training_data.rows();
    const std::size_t d = model.training_data.cols();
    if (x.rows() > 0 && x.cols() != d)
        throw DimensionError("transform_kernel_pca: expected " + std::to_string(d) + " columns, got " +
                             std::to_string(x.cols()));
    Matrix out(x.rows(), model.m);
    std::vector<double> krow(n);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        double mean = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            krow[j] = kernel_value(model.kernel, model.gamma, x.row(r), model.training_data.row(j));
            mean += krow[j];
        }
        mean /= static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j)
            krow[j] = krow[j] - mean - model.kernel_row_means[j] + model.kernel_grand_mean;
        for (std::size_t c = 0; c < model.m; ++c) out(r, c) = dot(krow, model.alphas.row(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

nlohmann::json rows_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix rows_matrix(const nlohmann::json& j) {
    std::vector<std::vector<double>> rows = j.get<std::vector<std::vector<double>>>();
    return Matrix::from_rows(rows);
}

void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << j.dump() << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    try {
        nlohmann::json j;
        is >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid projection model: ") + e.what(), 1);
    }
}

}  // namespace

void save_pca(const PcaModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["format"] = "phishembed-pca-v1";
    j["m"] = model.m;
    j["mean"] = model.mean;
    j["components"] = rows_json(model.components);
    j["explained_variance"] = model.explained_variance;
    j["explained_variance_ratio"] = model.explained_variance_ratio;
    write_json(j, path);
}

PcaModel load_pca(const std::filesystem::path& path) {
    const auto j = read_json(path);
    try {
        PcaModel m;
        m.m = j.at("m");
        m.mean = j.at("mean").get<std::vector<double>>();
        m.components = rows_matrix(j.at("components"));
        m.explained_variance = j.at("explained_variance").get<std::vector<double>>();
        m.explained_variance_ratio = j.at("explained_variance_ratio").get<std::vector<double>>();
        if (m.components.rows() != m.m || m.components.cols() != m.mean.size())
            throw DimensionError("stored PCA components do not match m/mean");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid PCA model: ") + e.what(), 1);
    }
}

void save_kernel_pca(const KernelPcaModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["format"] = "phishembed-kernel-pca-v1";
    j["kernel"] = model.kernel == PcaKernel::Rbf ? "rbf" : "linear";
    j["gamma"] = model.gamma;
    j["m"] = model.m;
    j["training_data"] = rows_json(model.training_data);
    j["alphas"] = rows_json(model.alphas);
    j["eigenvalues"] = model.eigenvalues;
    j["kernel_row_means"] = model.kernel_row_means;
    j["kernel_grand_mean"] = model.kernel_grand_mean;
    j["training_projection"] = rows_json(model.training_projection);
    write_json(j, path);
}

KernelPcaModel load_kernel_pca(const std::filesystem::path& path) {
    const auto j = read_json(path);
    try {
        KernelPcaModel m;
        m.kernel = j.at("kernel").get<std::string>() == "linear" ? PcaKernel::Linear : PcaKernel::Rbf;
        m.gamma = j.at("gamma");
        m.m = j.at("m");
        m.training_data = rows_matrix(j.at("training_data"));
        m.alphas = rows_matrix(j.at("alphas"));
        m.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
        m.kernel_row_means = j.at("kernel_row_means").get<std::vector<double>>();
        m.kernel_grand_mean = j.at("kernel_grand_mean");
        m.training_projection = rows_matrix(j.at("training_projection"));
        if (m.alphas.rows() != m.m || m.alphas.cols() != m.training_data.rows() ||
            m.kernel_row_means.size() != m.training_data.rows())
            throw DimensionError("stored kernel PCA model is inconsistent");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid kernel PCA model: ") + e.what(), 1);
    }
}

}  // namespace phishembed
