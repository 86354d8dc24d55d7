#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "szegolab/errors.hpp"
#include "szegolab/kahan.hpp"
#include "szegolab/linalg.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

// n! for n <= 20, table-checked so ball constants never silently overflow.
inline double factorial(int n) {
    static constexpr std::array<std::uint64_t, 21> table = {
        1ULL, 1ULL, 2ULL, 6ULL, 24ULL, 120ULL, 720ULL, 5040ULL, 40320ULL,
        362880ULL, 3628800ULL, 39916800ULL, 479001600ULL, 6227020800ULL,
        87178291200ULL, 1307674368000ULL, 20922789888000ULL, 355687428096000ULL,
        6402373705728000ULL, 121645100408832000ULL, 2432902008176640000ULL};
    if (n < 0 || n > 20) throw argument_error("factorial table covers 0..20");
    return static_cast<double>(table[static_cast<std::size_t>(n)]);
}

// Squared orthonormalization coefficient of z^n on the annulus r < |z| < 1:
// |a_n|^2 = 1/(2 pi (1 + r^{2n+1})) for the Hardy space with arclength
// boundary measure, |b_n|^2 = (n+1)/(pi (1 - r^{2n+2})) for the Bergman space
// (1/(2 pi log(1/r)) at n = -1). Rewritten for n < 0 so no r^{negative}
// overflows.
inline double annulus_coefficients(double r, int n, KernelKind kind) {
    if (!(r > 0.0 && r < 1.0))
        throw argument_error("annulus_coefficients: r must lie in (0,1)");
    if (kind == KernelKind::Szego) {
        if (n >= 0) return 1.0 / (2.0 * pi * (1.0 + std::pow(r, 2 * n + 1)));
        const double rm = std::pow(r, -(2 * n + 1));  // positive exponent
        return rm / (2.0 * pi * (1.0 + rm));
    }
    if (n == -1) return 1.0 / (2.0 * pi * std::log(1.0 / r));
    if (n >= 0) return (n + 1.0) / (pi * (1.0 - std::pow(r, 2 * n + 2)));
    const double rm = std::pow(r, -(2 * n + 2));
    return (-(n + 1.0)) * rm / (pi * (1.0 - rm));
}

struct DiagonalJet {
    double k0 = 0.0;  // K(z,z)
    cvector k1;       // d/dz_j of K(z,z), holomorphic slot
    CMat k2;          // d^2/dz_j dzbar_k of K(z,z)
};

namespace detail {

// One annulus series pass: sums sum_n n^j c_n t^n for j = 0,1,2 where t is
// the (possibly complex) power base and c_n the kernel coefficients. Terms
// are taken symmetrically outward from n = 0 with compensated accumulation;
// negative-index terms are expressed through q = r^2/t so nothing overflows.
template <typename T>
struct SeriesSums {
    T s0{}, s1{}, s2{};
    int cutoff_used = 0;
};

template <typename T>
SeriesSums<T> annulus_sums(double r, T t, KernelKind kind, double szego_scale,
                           int min_cutoff) {
    const double mag = std::abs(complexd(t));
    if (!(mag < 1.0) || !(mag > r * r))
        throw precision_error("annulus series base outside (r^2, 1)");

    constexpr int hard_cap = 2'000'000;
    const double L = std::log(1.0 / r);
    const T q = T(r * r) / t;
    const double qmag = r * r / mag;

    CompensatedSum<T> s0, s1, s2;
    // n = 0 term.
    if (kind == KernelKind::Szego)
        s0.add(T(szego_scale / (2.0 * pi * (1.0 + r))));
    else
        s0.add(T(1.0 / (pi * (1.0 - r * r))));

    T tpow = T(1.0);   // t^n for the positive side
    T qpow = T(1.0);   // q^m for the negative side
    bool pos_done = false, neg_done = false;
    double pos_term_mag = 1.0, neg_term_mag = 1.0;
    int n = 0;
    const double floor_scale = std::abs(complexd(s0.value()));

    while (!pos_done || !neg_done) {
        ++n;
        if (n > hard_cap)
            throw precision_error(
                "annulus series cutoff escalation exceeded 2e6 terms; point too "
                "close to the boundary for the requested accuracy");

        if (!pos_done) {
            tpow *= t;
            double coeff;
            if (kind == KernelKind::Szego)
                coeff = szego_scale / (2.0 * pi * (1.0 + std::pow(r, 2 * n + 1)));
            else
                coeff = (n + 1.0) / (pi * (1.0 - std::pow(r, 2 * n + 2)));
            const T base = coeff * tpow;
            s0.add(base);
            s1.add(double(n) * base);
            s2.add(double(n) * double(n) * base);
            pos_term_mag = std::abs(complexd(base)) * double(n) * double(n);
            // Geometric tail with a slack factor for the polynomial weights.
            if (n >= min_cutoff &&
                pos_term_mag * mag / (1.0 - mag) * 8.0 <
                    1e-17 * std::max(floor_scale, std::abs(complexd(s0.value()))))
                pos_done = true;
        }

        if (!neg_done) {
            const int m = n;
            qpow *= q;
            T base;
            if (kind == KernelKind::Szego) {
                // c_{-m} t^{-m} = q^m / (2 pi r (1 + r^{2m-1}))
                base = szego_scale * qpow / (2.0 * pi * r * (1.0 + std::pow(r, 2 * m - 1)));
            } else if (m == 1) {
                base = qpow / (2.0 * pi * r * r * L);
            } else {
                base = (m - 1.0) * qpow / (pi * r * r * (1.0 - std::pow(r, 2 * m - 2)));
            }
            s0.add(base);
            s1.add(-double(m) * base);
            s2.add(double(m) * double(m) * base);
            neg_term_mag = std::abs(complexd(base)) * double(m) * double(m);
            if (m >= min_cutoff &&
                neg_term_mag * qmag / (1.0 - qmag) * 8.0 <
                    1e-17 * std::max(floor_scale, std::abs(complexd(s0.value()))))
                neg_done = true;
        }
    }

    SeriesSums<T> out{s0.value(), s1.value(), s2.value(), n};
    // Final check on the truncation bound the loop maintained.
    const double tail = pos_term_mag * mag / (1.0 - mag) +
                        neg_term_mag * qmag / (1.0 - qmag);
    if (tail > 1e-13 * std::abs(complexd(out.s0)))
        throw precision_error("annulus series tail bound not met");
    return out;
}

inline complexd int_pow(complexd v, int e) {
    complexd acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= v;
    return acc;
}

inline complexd signed_pow(complexd z, int e) {
    if (e >= 0) return int_pow(z, e);
    return 1.0 / int_pow(z, -e);
}

} // namespace detail

// Sesqui-holomorphic kernel evaluator with on-diagonal derivatives up to
// second order. Closed forms on the disk and ball, symmetric Laurent series
// on the annulus. Immutable after construction; cutoff escalation happens in
// call-local state, so concurrent evaluation is safe.
class KernelEvaluator {
public:
    KernelEvaluator(DomainSpec domain, KernelKind kind, NumericConfig config = {})
        : domain_(std::move(domain)), kind_(kind), config_(config) {
        config_.validate();
        if (domain_.kind == DomainKind::PlanarCurve)
            throw capability_error(
                "closed-form kernels cover disk/annulus/ball; use the quadrature "
                "kernel builder for curve domains");
    }

    const DomainSpec& domain() const { return domain_; }
    KernelKind kind() const { return kind_; }
    const NumericConfig& config() const { return config_; }

    int dimension() const {
        return domain_.kind == DomainKind::UnitBall ? domain_.dimension : 1;
    }

    complexd eval(const cvector& z, const cvector& w) const {
        require_interior(domain_, z);
        require_interior(domain_, w);
        if (domain_.kind == DomainKind::Annulus) {
            const complexd p = z[0] * std::conj(w[0]);
            const auto s = detail::annulus_sums<complexd>(
                domain_.inner_radius, p, kind_, szego_scale(), config_.series_cutoff);
            return s.s0;
        }
        return ball_closed_form(hermitian_inner(z, w));
    }

    DiagonalJet diagonal_jet(const cvector& z) const {
        require_interior(domain_, z);
        DiagonalJet jet;
        if (domain_.kind == DomainKind::Annulus) {
            const double rho = std::norm(z[0]);
            const auto s = detail::annulus_sums<double>(
                domain_.inner_radius, rho, kind_, szego_scale(), config_.series_cutoff);
            jet.k0 = s.s0;
            jet.k1 = {complexd(s.s1) / z[0]};
            jet.k2 = CMat(1, 1);
            jet.k2(0, 0) = s.s2 / rho;
        } else {
            ball_jet(z, jet);
        }
        if (!(jet.k0 > 0.0))
            throw internal_consistency_error("kernel diagonal value is not positive");
        return jet;
    }

private:
    double szego_scale() const { return 2.0 / config_.c1; }

    complexd hermitian_inner(const cvector& z, const cvector& w) const {
        complexd s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
        return s;
    }

    // exponent and constant of C * (1 - <z,w>)^{-e}
    void closed_form_params(int n, double& C, int& e) const {
        if (kind_ == KernelKind::Szego) {
            C = factorial(n - 1) / (config_.c_const(n) * std::pow(pi, n));
            e = n;
        } else {
            C = factorial(n) / std::pow(pi, n);
            e = n + 1;
        }
    }

    complexd ball_closed_form(complexd zw) const {
        const int n = dimension();
        double C;
        int e;
        closed_form_params(n, C, e);
        return C / detail::int_pow(1.0 - zw, e);
    }

    void ball_jet(const cvector& z, DiagonalJet& jet) const {
        const int n = dimension();
        double C;
        int e;
        closed_form_params(n, C, e);
        const double u = 1.0 - norm2(z);
        const double ue = C / std::pow(u, e);
        jet.k0 = ue;
        jet.k1.assign(n, 0.0);
        jet.k2 = CMat(n, n);
        const double d1 = e * ue / u;             // C e u^{-(e+1)}
        const double d2 = e * (e + 1.0) * ue / (u * u);
        for (int j = 0; j < n; ++j) {
            jet.k1[j] = d1 * std::conj(z[j]);
            for (int k = 0; k < n; ++k)
                jet.k2(j, k) = d2 * std::conj(z[j]) * z[k] + (j == k ? d1 : 0.0);
        }
    }

    DomainSpec domain_;
    KernelKind kind_;
    NumericConfig config_;
};

} // namespace szegolab
