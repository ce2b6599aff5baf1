#include "dti/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dti/simd.hpp"

namespace dti {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw InputError("ragged initializer for DenseMatrix");
        std::copy(row.begin(), row.end(), m.row(i));
        ++i;
    }
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<double> DenseMatrix::matvec(const std::vector<double>& x) const {
    if (x.size() != cols_) throw InputError("matvec: dimension mismatch");
    std::vector<double> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = simd::dot(row(i), x.data(), cols_);
    return y;
}

double DenseMatrix::frobenius_norm() const {
    return std::sqrt(simd::dot(v_.data(), v_.data(), v_.size()));
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

double DenseMatrix::max_abs_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

bool DenseMatrix::is_symmetric(double tol) const {
    if (!square()) return false;
    return max_abs_asymmetry() <= tol * std::max(1.0, max_abs());
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("multiply: dimension mismatch");
    DenseMatrix bt = b.transposed();
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, j) = simd::dot(a.row(i), bt.row(j), a.cols());
    return c;
}

LinalgTolerances& linalg_tolerances() {
    static LinalgTolerances tol;
    return tol;
}

KernelSpec KernelSpec::polynomial(int d) {
    KernelSpec s;
    s.kind = Kind::polynomial;
    s.degree = d;
    s.validate();
    return s;
}

KernelSpec KernelSpec::gaussian(double beta) {
    KernelSpec s;
    s.kind = Kind::gaussian;
    s.bandwidth = beta;
    s.validate();
    return s;
}

KernelSpec KernelSpec::tanh(double h, double c) {
    KernelSpec s;
    s.kind = Kind::tanh;
    s.scale = h;
    s.offset = c;
    return s;
}

KernelSpec KernelSpec::precomputed() {
    KernelSpec s;
    s.kind = Kind::precomputed;
    return s;
}

void KernelSpec::validate() const {
    if (kind == Kind::polynomial && degree < 1)
        throw ConfigError("polynomial kernel requires degree >= 1");
    if (kind == Kind::gaussian && !(bandwidth > 0.0))
        throw ConfigError("gaussian kernel requires bandwidth > 0");
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::polynomial: os << "polynomial(d=" << degree << ")"; break;
        case Kind::gaussian: os << "gaussian(beta=" << bandwidth << ")"; break;
        case Kind::tanh: os << "tanh(h=" << scale << ",c=" << offset << ")"; break;
        case Kind::precomputed: os << "precomputed"; break;
    }
    return os.str();
}

double kernel_eval(const KernelSpec& spec, const double* x, const double* y, std::size_t n) {
    spec.validate();
    switch (spec.kind) {
        case KernelSpec::Kind::polynomial: {
            double base = simd::dot(x, y, n) + 1.0;
            double p = 1.0;
            for (int i = 0; i < spec.degree; ++i) p *= base;
            return p;
        }
        case KernelSpec::Kind::gaussian:
            return std::exp(-simd::sqdist(x, y, n) / spec.bandwidth);
        case KernelSpec::Kind::tanh:
            return std::tanh(spec.scale * simd::dot(x, y, n) + spec.offset);
        case KernelSpec::Kind::precomputed:
            throw InputError("kernel_eval: precomputed kernel has no pointwise form");
    }
    throw InputError("kernel_eval: unknown kernel kind");
}

double kernel_eval(const KernelSpec& spec, const std::vector<double>& x,
                   const std::vector<double>& y) {
    if (x.size() != y.size()) throw InputError("kernel_eval: dimension mismatch");
    return kernel_eval(spec, x.data(), y.data(), x.size());
}

DenseMatrix gram_matrix(const KernelSpec& spec, const DenseMatrix& rows) {
    DenseMatrix g(rows.rows(), rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        for (std::size_t j = i; j < rows.rows(); ++j) {
            double k = kernel_eval(spec, rows.row(i), rows.row(j), rows.cols());
            g(i, j) = k;
            g(j, i) = k;
        }
    }
    return g;
}

static void check_eigen_input(const DenseMatrix& m) {
    if (!m.square()) throw InputError("sym_eigen: matrix must be square");
    if (!m.all_finite()) throw InputError("sym_eigen: matrix has non-finite entries");
    if (!m.is_symmetric(linalg_tolerances().symmetry))
        throw InputError("sym_eigen: matrix is not symmetric within tolerance");
}

EigenDecomposition sym_eigen(const DenseMatrix& m) {
    check_eigen_input(m);
    const std::size_t n = m.rows();
    DenseMatrix a = m;
    // force exact symmetry so rotations stay consistent
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    DenseMatrix v = DenseMatrix::identity(n);

    const auto& tol = linalg_tolerances();
    const double norm = std::max(a.frobenius_norm(), 1e-300);
    const double stop = tol.eigen_off_diagonal * norm;

    for (int sweep = 0; sweep < tol.max_jacobi_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        off = std::sqrt(2.0 * off);
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= stop / (n * n)) continue;
                double app = a(p, p), aqq = a(q, q);
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

DenseMatrix psd_repair(const DenseMatrix& m) {
    EigenDecomposition e = sym_eigen(m);
    const std::size_t n = m.rows();
    DenseMatrix out(n, n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = std::max(e.values[k], 0.0);
        if (lam == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            double gil = lam * e.vectors(i, k);
            for (std::size_t j = i; j < n; ++j) out(i, j) += gil * e.vectors(j, k);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
    return out;
}

DenseMatrix psd_embedding(const DenseMatrix& m, std::size_t dim) {
    EigenDecomposition e = sym_eigen(m);
    const std::size_t n = m.rows();
    std::size_t keep = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (e.values[k] > 0.0) ++keep;
    if (dim > 0) keep = std::min(keep, dim);
    DenseMatrix u(n, keep);
    for (std::size_t k = 0; k < keep; ++k) {
        double s = std::sqrt(e.values[k]);
        for (std::size_t i = 0; i < n; ++i) u(i, k) = s * e.vectors(i, k);
    }
    return u;
}

DenseMatrix cholesky_factor(const DenseMatrix& m) {
    if (!m.square()) throw InputError("cholesky: matrix must be square");
    const std::size_t n = m.rows();
    DenseMatrix l(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j) - simd::dot(l.row(i), l.row(j), j);
            if (i == j) {
                if (!(s > 0.0) || !std::isfinite(s))
                    throw NumericError("cholesky: matrix is not positive definite");
                l(i, j) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const DenseMatrix& lower, const std::vector<double>& b) {
    const std::size_t n = lower.rows();
    if (b.size() != n) throw InputError("cholesky_solve: dimension mismatch");
    std::vector<double> x(b);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = (x[i] - simd::dot(lower.row(i), x.data(), i)) / lower(i, i);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lower(j, ii) * x[j];
        x[ii] = s / lower(ii, ii);
    }
    return x;
}

std::vector<double> regularized_solve(const DenseMatrix& k, const std::vector<double>& y,
                                      double delta) {
    if (!(delta > 0.0)) throw InputError("regularized_solve: delta must be > 0");
    if (!k.square() || k.rows() != y.size())
        throw InputError("regularized_solve: dimension mismatch");
    DenseMatrix a = k;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += delta;
    try {
        return cholesky_solve(cholesky_factor(a), y);
    } catch (const NumericError&) {
        // K + delta I should be SPD; a failed factorization means the input is
        // asymmetric or ill-formed. Try the eigen route before giving up.
        EigenDecomposition e = sym_eigen(k);
        const std::size_t n = k.rows();
        std::vector<double> c(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double lam = std::max(e.values[j], 0.0) + delta;
            double proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += e.vectors(i, j) * y[i];
            proj /= lam;
            for (std::size_t i = 0; i < n; ++i) c[i] += proj * e.vectors(i, j);
        }
        for (double v : c)
            if (!std::isfinite(v)) throw NumericError("regularized_solve: singular system");
        return c;
    }
}

}  // namespace dti
