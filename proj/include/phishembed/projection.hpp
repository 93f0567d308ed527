#pragma once

#include "phishembed/linalg.hpp"

#include <filesystem>
#include <vector>

namespace phishembed {

struct PcaModel {
    std::vector<double> mean;
    /// m x d, orthonormal rows.
    Matrix components;
    /// Eigenvalues of the sample covariance for every one of the d directions.
    std::vector<double> explained_variance;
    /// explained_variance normalized to sum to one.
    std::vector<double> explained_variance_ratio;
    std::size_t m = 0;
};

/// Eigendecomposition of the (n-1)-normalized covariance. Throws ConfigError on
/// bad shapes and NumericError if the data rank is below m.
PcaModel fit_pca(const Matrix& x, std::size_t m);

/// (x - mean) * components^T
Matrix transform_pca(const PcaModel& model, const Matrix& x);

/// R_n: prefix sums of the explained-variance ratios.
std::vector<double> cumulative_variance_curve(const PcaModel& model);

/// Smallest n with R_n >= threshold (1-based), or 0 if never reached.
std::size_t components_for_variance(const std::vector<double>& curve, double threshold);

enum class PcaKernel { Rbf, Linear };

struct KernelPcaModel {
    PcaKernel kernel = PcaKernel::Rbf;
    Matrix training_data;
    double gamma = 1.0;
    /// m x n, eigenvector coefficients divided by sqrt(eigenvalue).
    Matrix alphas;
    std::vector<double> eigenvalues;
    std::vector<double> kernel_row_means;
    double kernel_grand_mean = 0.0;
    std::size_t m = 0;
    /// Projections of the training rows, n x m.
    Matrix training_projection;
};

double kernel_value(PcaKernel kernel, double gamma, std::span<const double> a, std::span<const double> b);

/// Gram matrix of the rows of x.
Matrix kernel_matrix(PcaKernel kernel, double gamma, const Matrix& x);

/// K - row means - column means + grand mean.
Matrix double_center(const Matrix& k);

/// 1 / (d * mean per-feature population variance); 1.0 when the data are constant.
double default_rbf_gamma(const Matrix& x);

KernelPcaModel fit_kernel_pca(const Matrix& x, std::size_t m, double gamma, PcaKernel kernel = PcaKernel::Rbf);
Matrix transform_kernel_pca(const KernelPcaModel& model, const Matrix& x);

void save_pca(const PcaModel& model, const std::filesystem::path& path);
PcaModel load_pca(const std::filesystem::path& path);
void save_kernel_pca(const KernelPcaModel& model, const std::filesystem::path& path);
KernelPcaModel load_kernel_pca(const std::filesystem::path& path);

}  // namespace phishembed
