#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dti/linalg.hpp"
#include "dti/rng.hpp"
#include "oracles.hpp"

using namespace dti;

namespace {

double rel_fro_error(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix d = a;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) -= b(i, j);
    return d.frobenius_norm() / std::max(b.frobenius_norm(), 1e-300);
}

DenseMatrix reconstruct(const EigenDecomposition& e) {
    std::size_t n = e.values.size();
    DenseMatrix m(n, n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) += e.values[k] * e.vectors(i, k) * e.vectors(j, k);
    return m;
}

}  // namespace

TEST_CASE("kernel_eval matches the closed forms") {
    std::vector<double> x{1.0, 0.0}, y{0.0, 1.0};
    // orthogonal vectors, degree 1: (0 + 1)^1
    CHECK(kernel_eval(KernelSpec::polynomial(1), x, y) == doctest::Approx(1.0));
    // identical inputs under any gaussian bandwidth
    CHECK(kernel_eval(KernelSpec::gaussian(0.37), x, x) == 1.0);
    // ||(0,0)-(1,1)||^2 = 2, beta = 2 -> exp(-1)
    std::vector<double> o{0.0, 0.0}, e{1.0, 1.0};
    CHECK(kernel_eval(KernelSpec::gaussian(2.0), o, e) == doctest::Approx(std::exp(-1.0)));
    CHECK(kernel_eval(KernelSpec::tanh(2.0, 0.5), x, y) == doctest::Approx(std::tanh(0.5)));
    CHECK(kernel_eval(KernelSpec::polynomial(3), x, x) == doctest::Approx(8.0));
}

TEST_CASE("kernel_eval input validation") {
    std::vector<double> x{1.0, 2.0}, y{1.0};
    CHECK_THROWS_AS(kernel_eval(KernelSpec::gaussian(1.0), x, y), InputError);
    CHECK_THROWS_AS(KernelSpec::gaussian(0.0), ConfigError);
    CHECK_THROWS_AS(KernelSpec::polynomial(0), ConfigError);
    CHECK_THROWS_AS(kernel_eval(KernelSpec::precomputed(), x, x), InputError);
}

TEST_CASE("kernels are symmetric in their arguments") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(5), y(5);
        for (auto& v : x) v = rng.uniform(-2, 2);
        for (auto& v : y) v = rng.uniform(-2, 2);
        for (const auto& spec :
             {KernelSpec::polynomial(2), KernelSpec::gaussian(1.5), KernelSpec::tanh(0.7, -0.2)}) {
            CHECK(kernel_eval(spec, x, y) == doctest::Approx(kernel_eval(spec, y, x)));
        }
    }
}

TEST_CASE("sym_eigen: identity and hand-solved 2x2") {
    auto e = sym_eigen(DenseMatrix::identity(2));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));

    // [[2,1],[1,2]] has characteristic polynomial (2-l)^2 - 1 -> 3, 1
    auto e2 = sym_eigen(DenseMatrix::from_rows({{2, 1}, {1, 2}}));
    CHECK(e2.values[0] == doctest::Approx(3.0));
    CHECK(e2.values[1] == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen rejects bad input") {
    CHECK_THROWS_AS(sym_eigen(DenseMatrix(2, 3)), InputError);
    CHECK_THROWS_AS(sym_eigen(DenseMatrix::from_rows({{1, 2}, {0, 1}})), InputError);
}

TEST_CASE("sym_eigen reconstruction and orthonormality up to 200x200") {
    Rng rng(3);
    for (std::size_t n : {3u, 10u, 50u, 200u}) {
        DenseMatrix m = oracle::random_symmetric(n, rng);
        auto e = sym_eigen(m);
        CHECK(rel_fro_error(reconstruct(e), m) <= 1e-7);
        DenseMatrix vtv = multiply(e.vectors.transposed(), e.vectors);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                worst = std::max(worst, std::fabs(vtv(i, j) - (i == j ? 1.0 : 0.0)));
        CHECK(worst <= 1e-7);
        for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
}

TEST_CASE("psd_repair clips negatives and fixes PSD inputs") {
    CHECK(rel_fro_error(psd_repair(DenseMatrix::identity(3)), DenseMatrix::identity(3)) <= 1e-12);

    // [[1,2],[2,1]] has eigenvalues 3 and -1; the repair keeps (3, 0)
    DenseMatrix r = psd_repair(DenseMatrix::from_rows({{1, 2}, {2, 1}}));
    auto e = sym_eigen(r);
    CHECK(e.values[0] == doctest::Approx(3.0));
    CHECK(e.values[1] == doctest::Approx(0.0).epsilon(1e-9));
    // eigenvector of 3 is (1,1)/sqrt(2), so the repair is the all-1.5 matrix
    CHECK(r(0, 0) == doctest::Approx(1.5));
    CHECK(r(0, 1) == doctest::Approx(1.5));

    Rng rng(5);
    DenseMatrix gram = oracle::random_psd(6, rng);
    CHECK(rel_fro_error(psd_repair(gram), gram) <= 1e-7);
}

TEST_CASE("psd_repair is idempotent") {
    Rng rng(9);
    for (int rep = 0; rep < 5; ++rep) {
        DenseMatrix m = oracle::random_symmetric(8, rng);
        DenseMatrix once = psd_repair(m);
        DenseMatrix twice = psd_repair(once);
        double worst = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                worst = std::max(worst, std::fabs(once(i, j) - twice(i, j)));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("regularized_solve: trivial systems") {
    // (I + I) c = (2,4)
    auto c = regularized_solve(DenseMatrix::identity(2), {2.0, 4.0}, 1.0);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(2.0));
    // K = 0 -> c = y
    auto c2 = regularized_solve(DenseMatrix(3, 3, 0.0), {1.0, -2.0, 0.5}, 1.0);
    CHECK(c2[0] == doctest::Approx(1.0));
    CHECK(c2[1] == doctest::Approx(-2.0));
    CHECK(c2[2] == doctest::Approx(0.5));
}

TEST_CASE("regularized_solve rejects nonpositive delta") {
    CHECK_THROWS_AS(regularized_solve(DenseMatrix::identity(2), {1.0, 1.0}, 0.0), InputError);
    CHECK_THROWS_AS(regularized_solve(DenseMatrix::identity(2), {1.0, 1.0}, -1.0), InputError);
}

TEST_CASE("regularized_solve matches the explicit-inverse oracle") {
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        DenseMatrix k = oracle::random_psd(8, rng);
        std::vector<double> y(8);
        for (auto& v : y) v = rng.uniform(-1, 1);
        double delta = 0.5;
        DenseMatrix a = k;
        for (std::size_t i = 0; i < 8; ++i) a(i, i) += delta;
        auto c = regularized_solve(k, y, delta);
        auto ref = oracle::solve_by_inverse(a, y);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            num += (c[i] - ref[i]) * (c[i] - ref[i]);
            den += ref[i] * ref[i];
        }
        CHECK(std::sqrt(num) <= 1e-8 * std::max(std::sqrt(den), 1e-12));

        // residual contract
        auto r = a.matvec(c);
        double rn = 0.0, yn = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            rn += (r[i] - y[i]) * (r[i] - y[i]);
            yn += y[i] * y[i];
        }
        CHECK(std::sqrt(rn) <= 1e-8 * std::sqrt(yn));
    }
}

TEST_CASE("regularized_solve varies continuously in delta") {
    Rng rng(23);
    DenseMatrix k = oracle::random_psd(10, rng);
    std::vector<double> y(10);
    for (auto& v : y) v = rng.uniform(-1, 1);
    double delta = 0.7;
    auto c1 = regularized_solve(k, y, delta);
    auto c2 = regularized_solve(k, y, delta * (1.0 + 1e-6));
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        diff += (c1[i] - c2[i]) * (c1[i] - c2[i]);
        norm += c1[i] * c1[i];
    }
    CHECK(std::sqrt(diff) <= 1e-4 * std::sqrt(norm));
}

TEST_CASE("cholesky fallback surfaces numeric failure") {
    DenseMatrix nan_mat(2, 2, 0.0);
    nan_mat(0, 0) = std::nan("");
    CHECK_THROWS(regularized_solve(nan_mat, {1.0, 1.0}, 1.0));
}

TEST_CASE("psd_embedding reconstructs the repaired matrix") {
    Rng rng(31);
    DenseMatrix m = oracle::random_symmetric(12, rng);
    DenseMatrix rep = psd_repair(m);
    DenseMatrix u = psd_embedding(m);
    DenseMatrix uut = multiply(u, u.transposed());
    CHECK(rel_fro_error(uut, rep) <= 1e-7);
}
