#include "oracles.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/linalg.hpp"

#include <doctest.h>

using namespace phishembed;

TEST_SUITE("linalg") {

TEST_CASE("matrix basics") {
    const auto a = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    CHECK(a.rows() == 3);
    CHECK(a.cols() == 2);
    CHECK(a(2, 1) == 6);
    const auto t = a.transposed();
    CHECK(t(1, 2) == 6);
    const auto p = t * a;
    CHECK(p(0, 0) == 35);
    CHECK(p(0, 1) == 44);
    CHECK(p(1, 1) == 56);
    const std::vector<std::size_t> pick = {2, 0};
    CHECK(a.select_rows(pick) == Matrix::from_rows({{5, 6}, {1, 2}}));
    CHECK(Matrix::identity(2) == Matrix::from_rows({{1, 0}, {0, 1}}));
}

TEST_CASE("vector helpers") {
    const std::vector<double> u = {3, 4}, v = {0, 1};
    CHECK(dot(u, v) == 4);
    CHECK(norm(u) == doctest::Approx(5));
    CHECK(squared_distance(u, v) == 18);
    CHECK(cosine_similarity(u, u) == doctest::Approx(1));
}

TEST_CASE("jacobi matches an independent solver") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const auto b = oracle::random_matrix(rng, n, n);
        const auto a = b.transposed() * b;  // symmetric PSD
        const auto eig = jacobi_eigen(a);

        Eigen::MatrixXd e(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e(i, j) = a(i, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(e);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(eig.values[k] == doctest::Approx(ref.eigenvalues()(n - 1 - k)).epsilon(1e-10).scale(1.0));
        CHECK(max_eigen_residual(a, eig, n) < 1e-10);
        for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
    }
}

TEST_CASE("sign canonicalization") {
    std::vector<double> v = {0.1, -0.9, 0.3};
    CHECK(canonicalize_sign(v));
    CHECK(v[1] == 0.9);
    CHECK_FALSE(canonicalize_sign(v));
    std::vector<double> tie = {-0.5, 0.5};
    CHECK(canonicalize_sign(tie));
    CHECK(tie[0] == 0.5);
}

}
