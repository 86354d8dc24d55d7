#pragma once

// Shared test helpers. The brute-force series evaluators here are oracles:
// plain left-to-right summation over the textbook coefficient formulas, kept
// deliberately independent of the library's summation path.

#include <complex>

#include "szegolab/kernels.hpp"
#include "szegolab/types.hpp"

namespace testutil {

using szegolab::complexd;
using szegolab::cvector;
using szegolab::KernelKind;

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double rel_err(complexd got, complexd want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Direct coefficient of z^n in the annulus kernel series (c1 = 2 convention
// for the Szego side). Relies on IEEE inf/0 semantics for very negative n,
// which is fine at the parameter ranges the tests use.
inline double naive_annulus_coeff(double r, int n, KernelKind kind) {
    if (kind == KernelKind::Szego)
        return 1.0 / (2.0 * szegolab::pi * (1.0 + std::pow(r, 2.0 * n + 1.0)));
    if (n == -1) return 1.0 / (2.0 * szegolab::pi * std::log(1.0 / r));
    return (n + 1.0) / (szegolab::pi * (1.0 - std::pow(r, 2.0 * n + 2.0)));
}

inline complexd naive_annulus_kernel(double r, complexd z, complexd w,
                                     KernelKind kind, int terms) {
    complexd sum = 0.0;
    const complexd p = z * std::conj(w);
    for (int n = -terms; n <= terms; ++n)
        sum += naive_annulus_coeff(r, n, kind) * std::pow(p, n);
    return sum;
}

// Naive on-diagonal jet: k0, k1 = sum n c_n z^{n-1} zbar^n, k2 = sum n^2 c_n |z|^{2(n-1)}.
struct NaiveJet {
    double k0;
    complexd k1;
    double k2;
};

inline NaiveJet naive_annulus_jet(double r, complexd z, KernelKind kind, int terms) {
    NaiveJet jet{0.0, 0.0, 0.0};
    const double rho = std::norm(z);
    for (int n = -terms; n <= terms; ++n) {
        const double c = naive_annulus_coeff(r, n, kind);
        const double pw = std::pow(rho, n);
        jet.k0 += c * pw;
        jet.k1 += c * double(n) * pw / z;
        jet.k2 += c * double(n) * double(n) * pw / rho;
    }
    return jet;
}

// Wirtinger finite differences of a two-point kernel on the diagonal, for
// checking analytic jets. h ~ 1e-5 gives ~1e-6 relative accuracy.
template <typename Eval>
complexd fd_k1(Eval&& eval, const cvector& z, int j, double h) {
    auto shift = [&](complexd d) {
        cvector s = z;
        s[j] += d;
        return s;
    };
    const complexd dx = (eval(shift(h), z) - eval(shift(-h), z)) / (2.0 * h);
    const complexd dy =
        (eval(shift(complexd(0, h)), z) - eval(shift(complexd(0, -h)), z)) / (2.0 * h);
    return 0.5 * (dx - complexd(0, 1) * dy);
}

template <typename Eval>
complexd fd_k2(Eval&& eval, const cvector& z, int j, int k, double h) {
    // d/dwbar_k = (d/dx_k + i d/dy_k)/2 applied to the w slot of d/dz_j eval.
    auto dz = [&](const cvector& w) {
        auto ev = [&](const cvector& zz, const cvector& ww) { return eval(zz, ww); };
        auto slice = [&](const cvector& zz) { return ev(zz, w); };
        auto shift = [&](complexd d) {
            cvector s = z;
            s[j] += d;
            return s;
        };
        const complexd dx = (slice(shift(h)) - slice(shift(-h))) / (2.0 * h);
        const complexd dy =
            (slice(shift(complexd(0, h))) - slice(shift(complexd(0, -h)))) / (2.0 * h);
        return 0.5 * (dx - complexd(0, 1) * dy);
    };
    auto shiftw = [&](complexd d) {
        cvector s = z;
        s[k] += d;
        return s;
    };
    const complexd dx = (dz(shiftw(h)) - dz(shiftw(-h))) / (2.0 * h);
    const complexd dy =
        (dz(shiftw(complexd(0, h))) - dz(shiftw(complexd(0, -h)))) / (2.0 * h);
    return 0.5 * (dx + complexd(0, 1) * dy);
}

} // namespace testutil
