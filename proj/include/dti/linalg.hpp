#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "dti/errors.hpp"

namespace dti {

// Dense real matrix, row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return v_.size(); }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }
    double* row(std::size_t i) { return v_.data() + i * cols_; }
    const double* row(std::size_t i) const { return v_.data() + i * cols_; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    bool operator==(const DenseMatrix& o) const = default;

    DenseMatrix transposed() const;
    std::vector<double> column(std::size_t j) const;
    std::vector<double> matvec(const std::vector<double>& x) const;

    double frobenius_norm() const;
    double max_abs() const;
    double max_abs_asymmetry() const;  // max |a_ij - a_ji|, square only
    bool all_finite() const;
    bool is_symmetric(double tol) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> v_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

// Numeric tolerances used by this module. Defaults match the contracts; a
// caller may tighten or loosen them process-wide.
struct LinalgTolerances {
    double symmetry = 1e-9;           // relative asymmetry allowed on eigen input
    double eigen_reconstruction = 1e-7;
    double eigen_off_diagonal = 1e-14;  // Jacobi convergence, relative to ||m||_F
    int max_jacobi_sweeps = 100;
    double solve_residual = 1e-8;
};

LinalgTolerances& linalg_tolerances();

// The three kernel functions, plus "precomputed" for callers that carry a
// ready Gram matrix.
struct KernelSpec {
    enum class Kind { polynomial, gaussian, tanh, precomputed };
    Kind kind = Kind::gaussian;
    int degree = 1;         // polynomial, >= 1
    double bandwidth = 1.0; // gaussian, > 0
    double scale = 1.0;     // tanh
    double offset = 0.0;    // tanh

    static KernelSpec polynomial(int d);
    static KernelSpec gaussian(double beta);
    static KernelSpec tanh(double h, double c);
    static KernelSpec precomputed();

    void validate() const;
    std::string describe() const;
};

double kernel_eval(const KernelSpec& spec, const std::vector<double>& x,
                   const std::vector<double>& y);
double kernel_eval(const KernelSpec& spec, const double* x, const double* y, std::size_t n);

// Gram matrix of row vectors under the given kernel.
DenseMatrix gram_matrix(const KernelSpec& spec, const DenseMatrix& rows);

struct EigenDecomposition {
    std::vector<double> values;  // descending
    DenseMatrix vectors;         // eigenvectors in columns, orthonormal
};

// Symmetric eigendecomposition by cyclic Jacobi rotations.
EigenDecomposition sym_eigen(const DenseMatrix& m);

// Projects a symmetric matrix onto the PSD cone by clipping negative
// eigenvalues to zero.
DenseMatrix psd_repair(const DenseMatrix& m);

// Embedding factor U with K ~= U U^T (columns scaled by sqrt of the clipped
// eigenvalues). dim = 0 keeps every nonnegative component.
DenseMatrix psd_embedding(const DenseMatrix& m, std::size_t dim = 0);

// Lower-triangular Cholesky factor of an SPD matrix. Throws NumericError on
// a nonpositive pivot or non-finite input.
DenseMatrix cholesky_factor(const DenseMatrix& m);
std::vector<double> cholesky_solve(const DenseMatrix& lower, const std::vector<double>& b);

// Solves (K + delta I) c = y for symmetric PSD K, delta > 0. Cholesky first,
// eigendecomposition fallback if the factorization breaks down.
std::vector<double> regularized_solve(const DenseMatrix& k, const std::vector<double>& y,
                                      double delta);

}  // namespace dti
