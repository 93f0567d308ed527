#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phishembed {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    Matrix transposed() const;
    /// Rows selected by index, in the given order.
    Matrix select_rows(std::span<const std::size_t> indices) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double frobenius_norm(const Matrix& a);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
/// Column j of `vectors` is the unit eigenvector for `values[j]`.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
};

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
/// Throws NumericError if the sweep limit is hit before convergence.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, int max_sweeps = 100);

/// Largest ‖A v − λ v‖ / ‖A‖ over the first `count` pairs.
double max_eigen_residual(const Matrix& a, const SymmetricEigen& eig, std::size_t count);

/// Flips the sign of `v` so its largest-magnitude entry is positive
/// (first such index on ties). Returns true if flipped.
bool canonicalize_sign(std::span<double> v);

}  // namespace phishembed
