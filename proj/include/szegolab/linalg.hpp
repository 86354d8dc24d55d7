#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "szegolab/errors.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

// Dense complex matrix, row-major. Sizes here stay small (basis frames and
// Gram matrices up to ~100), so no blocking or pivoting machinery.
struct CMat {
    int rows = 0, cols = 0;
    std::vector<complexd> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    complexd& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const complexd& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline CMat operator*(const CMat& x, const CMat& y) {
    CMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const complexd xik = x(i, k);
            if (xik == complexd{}) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

inline CMat adjoint(const CMat& x) {
    CMat z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = std::conj(x(i, j));
    return z;
}

inline double max_abs_deviation_from_identity(const CMat& m) {
    double d = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            d = std::max(d, std::abs(m(i, j) - (i == j ? complexd(1.0) : complexd(0.0))));
    return d;
}

// --- real symmetric Jacobi eigensolver ------------------------------------

struct RealEig {
    std::vector<double> values;           // unsorted
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th column
};

// Cyclic Jacobi; adequate and robust for the matrix sizes used here.
inline RealEig jacobi_eigensystem(std::vector<double> A, int n) {
    std::vector<double> V(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(i) * n + i] = 1.0;
    auto at = [&](std::vector<double>& M, int i, int j) -> double& {
        return M[static_cast<std::size_t>(i) * n + j];
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int p = 0; p < n; ++p) {
            diag += at(A, p, p) * at(A, p, p);
            for (int q = p + 1; q < n; ++q) off += 2.0 * at(A, p, q) * at(A, p, q);
        }
        if (std::sqrt(off) < 1e-15 * (1.0 + std::sqrt(diag))) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(A, p, q);
                if (apq == 0.0) continue;
                const double theta = (at(A, q, q) - at(A, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = at(A, k, p), akq = at(A, k, q);
                    at(A, k, p) = c * akp - s * akq;
                    at(A, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(A, p, k), aqk = at(A, q, k);
                    at(A, p, k) = c * apk - s * aqk;
                    at(A, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = at(V, k, p), vkq = at(V, k, q);
                    at(V, k, p) = c * vkp - s * vkq;
                    at(V, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    RealEig e;
    e.values.resize(n);
    e.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        e.values[k] = at(A, k, k);
        for (int i = 0; i < n; ++i) e.vectors[k][i] = at(V, i, k);
    }
    return e;
}

// Hermitian H -> real symmetric embedding [[X, -Y], [Y, X]]; every eigenvalue
// of H appears twice in the embedding, which is harmless for the uses below.
inline std::vector<double> hermitian_embedding(const CMat& h) {
    const int n = h.rows;
    std::vector<double> s(static_cast<std::size_t>(4) * n * n, 0.0);
    auto at = [&](int i, int j) -> double& {
        return s[static_cast<std::size_t>(i) * 2 * n + j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            at(i, j) = h(i, j).real();
            at(i + n, j + n) = h(i, j).real();
            at(i, j + n) = -h(i, j).imag();
            at(i + n, j) = h(i, j).imag();
        }
    return s;
}

inline std::vector<double> hermitian_eigenvalues(const CMat& h) {
    auto e = jacobi_eigensystem(hermitian_embedding(h), 2 * h.rows);
    std::sort(e.values.begin(), e.values.end());
    return e.values;
}

// Spectral function f(H) of a Hermitian matrix via the real embedding.
template <typename F>
inline CMat hermitian_function(const CMat& h, F&& f, double* min_eig = nullptr,
                               double* max_eig = nullptr) {
    const int n = h.rows;
    auto e = jacobi_eigensystem(hermitian_embedding(h), 2 * n);
    if (min_eig) *min_eig = *std::min_element(e.values.begin(), e.values.end());
    if (max_eig) *max_eig = *std::max_element(e.values.begin(), e.values.end());

    // V f(L) V^T, then pull back to complex form.
    const int m = 2 * n;
    std::vector<double> g(static_cast<std::size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k) {
        const double fk = f(e.values[k]);
        for (int i = 0; i < m; ++i) {
            const double vik = e.vectors[k][i] * fk;
            if (vik == 0.0) continue;
            for (int j = 0; j < m; ++j)
                g[static_cast<std::size_t>(i) * m + j] += vik * e.vectors[k][j];
        }
    }
    CMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = {g[static_cast<std::size_t>(i) * m + j],
                         g[static_cast<std::size_t>((i + n)) * m + j]};
    return out;
}

// G^{-1/2} by Loewdin symmetric orthogonalization. Reports cond(G).
inline CMat loewdin_inverse_sqrt(const CMat& gram, double& cond) {
    double lo = 0.0, hi = 0.0;
    CMat w = hermitian_function(
        gram,
        [](double lambda) {
            if (lambda <= 0.0)
                throw precision_error("Gram matrix numerically singular");
            return 1.0 / std::sqrt(lambda);
        },
        &lo, &hi);
    cond = hi / lo;
    return w;
}

// --- Gauss-Legendre rule on [-1, 1] ----------------------------------------

struct Quadrature1D {
    std::vector<double> x, w;
};

inline Quadrature1D gauss_legendre(int q) {
    Quadrature1D rule;
    rule.x.resize(q);
    rule.w.resize(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_q(x) and P'_q(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[q - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[q - 1 - i] = w;
    }
    return rule;
}

inline Quadrature1D gauss_legendre_on(double a, double b, int q) {
    Quadrature1D rule = gauss_legendre(q);
    for (int i = 0; i < q; ++i) {
        rule.x[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
        rule.w[i] *= 0.5 * (b - a);
    }
    return rule;
}

} // namespace szegolab
