#pragma once

#include <functional>

#include "szegolab/linalg.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

// Central finite differences in the 2n real coordinates of C^n, assembled
// into Wirtinger derivatives. Used by the FiniteDifference probe mode and by
// the log-SK verification path.

namespace fd {

using RealField = std::function<double(const cvector&)>;

inline cvector shifted(const cvector& z, int coord, double h) {
    // coord 2j   -> x_j
    // coord 2j+1 -> y_j
    cvector s = z;
    const int j = coord / 2;
    s[j] += (coord % 2 == 0) ? complexd(h, 0.0) : complexd(0.0, h);
    return s;
}

inline double partial(const RealField& f, const cvector& z, int c, double h) {
    return (f(shifted(z, c, h)) - f(shifted(z, c, -h))) / (2.0 * h);
}

inline double second_partial(const RealField& f, const cvector& z, int c1, int c2,
                             double h) {
    if (c1 == c2)
        return (f(shifted(z, c1, h)) - 2.0 * f(z) + f(shifted(z, c1, -h))) / (h * h);
    const auto fpm = [&](double s1, double s2) {
        return f(shifted(shifted(z, c1, s1), c2, s2));
    };
    return (fpm(h, h) - fpm(h, -h) - fpm(-h, h) + fpm(-h, -h)) / (4.0 * h * h);
}

// rho_j = (d/dx_j - i d/dy_j) rho / 2
inline cvector gradient_complex(const RealField& f, const cvector& z, double h) {
    const int n = static_cast<int>(z.size());
    cvector g(n);
    for (int j = 0; j < n; ++j)
        g[j] = 0.5 * complexd(partial(f, z, 2 * j, h), -partial(f, z, 2 * j + 1, h));
    return g;
}

// rho_{j kbar} = [ (f_{x_j x_k} + f_{y_j y_k}) + i (f_{x_j y_k} - f_{y_j x_k}) ] / 4
inline CMat complex_hessian(const RealField& f, const cvector& z, double h) {
    const int n = static_cast<int>(z.size());
    CMat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double xx = second_partial(f, z, 2 * j, 2 * k, h);
            const double yy = second_partial(f, z, 2 * j + 1, 2 * k + 1, h);
            const double xy = second_partial(f, z, 2 * j, 2 * k + 1, h);
            const double yx = second_partial(f, z, 2 * j + 1, 2 * k, h);
            m(j, k) = 0.25 * complexd(xx + yy, xy - yx);
        }
    return m;
}

// One Richardson step: kills the O(h^2) truncation term of the central rules.
inline CMat complex_hessian_richardson(const RealField& f, const cvector& z, double h) {
    const CMat coarse = complex_hessian(f, z, h);
    const CMat fine = complex_hessian(f, z, 0.5 * h);
    CMat out(coarse.rows, coarse.cols);
    for (int i = 0; i < coarse.rows; ++i)
        for (int j = 0; j < coarse.cols; ++j)
            out(i, j) = (4.0 * fine(i, j) - coarse(i, j)) / 3.0;
    return out;
}

} // namespace fd

} // namespace szegolab
