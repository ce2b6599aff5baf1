#pragma once

// Independent reference implementations used only by tests. Each oracle is
// deliberately naive (dense Gauss-Jordan, exhaustive pair counting, finite
// differences, projected gradient) so it shares no code path with the
// library it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dti/linalg.hpp"
#include "dti/rng.hpp"

namespace oracle {

// Gauss-Jordan inverse with partial pivoting.
inline dti::DenseMatrix invert(const dti::DenseMatrix& m) {
    const std::size_t n = m.rows();
    dti::DenseMatrix a = m;
    dti::DenseMatrix inv = dti::DenseMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) throw std::runtime_error("oracle::invert: singular");
        if (piv != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        double d = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= d;
            inv(col, c) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline std::vector<double> solve_by_inverse(const dti::DenseMatrix& m,
                                            const std::vector<double>& y) {
    return invert(m).matvec(y);
}

// Exhaustive concordant-pair AUC: sum over positive x negative pairs of
// [s_p > s_n] + 0.5 [s_p == s_n].
inline double pair_count_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double conc = 0.0;
    std::size_t np = 0, nn = 0;
    for (std::size_t p = 0; p < scores.size(); ++p) {
        if (!labels[p]) continue;
        ++np;
        for (std::size_t q = 0; q < scores.size(); ++q) {
            if (labels[q]) continue;
            if (scores[p] > scores[q]) conc += 1.0;
            else if (scores[p] == scores[q]) conc += 0.5;
        }
    }
    for (int l : labels)
        if (!l) ++nn;
    return conc / (double(np) * double(nn));
}

// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& x, double h = 1e-6) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

// Projected-gradient ascent on the SVM dual with exact projection onto
// {0 <= a <= C, sum a_i y_i = 0}; slow but dependable on tiny problems.
inline double svm_dual_reference(const dti::DenseMatrix& gram, const std::vector<int>& y, double c,
                                 int iters = 200000, double step = 1e-3) {
    const std::size_t n = y.size();
    std::vector<double> a(n, 0.0), g(n);
    auto project = [&](std::vector<double>& v) {
        // alternate box clipping and equality correction
        for (int rep = 0; rep < 100; ++rep) {
            double viol = 0.0;
            for (std::size_t i = 0; i < n; ++i) viol += v[i] * y[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= viol * y[i] / n;
            bool clipped = false;
            for (std::size_t i = 0; i < n; ++i) {
                double before = v[i];
                v[i] = std::clamp(v[i], 0.0, c);
                clipped |= v[i] != before;
            }
            if (!clipped && std::fabs(viol) < 1e-14) break;
        }
    };
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a[j] * y[i] * y[j] * gram(i, j);
            g[i] = 1.0 - s;
        }
        for (std::size_t i = 0; i < n; ++i) a[i] += step * g[i];
        project(a);
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        obj += a[i];
        for (std::size_t j = 0; j < n; ++j) obj -= 0.5 * a[i] * a[j] * y[i] * y[j] * gram(i, j);
    }
    return obj;
}

// Random symmetric matrix with entries in [-1,1].
inline dti::DenseMatrix random_symmetric(std::size_t n, dti::Rng& rng) {
    dti::DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = rng.uniform(-1.0, 1.0);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

// Random PSD matrix X^T X / n.
inline dti::DenseMatrix random_psd(std::size_t n, dti::Rng& rng) {
    dti::DenseMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.uniform(-1.0, 1.0);
    dti::DenseMatrix g = dti::multiply(x.transposed(), x);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) /= n;
    return g;
}

}  // namespace oracle
