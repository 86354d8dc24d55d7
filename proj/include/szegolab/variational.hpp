#pragma once

#include <cmath>
#include <vector>

#include "szegolab/kernels.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

// Orthonormal basis element in monomial-coefficient form: coef * z^exponents.
// Planar domains use a single (possibly negative) exponent; the ball uses a
// nonnegative multi-index.
struct BasisElement {
    double coef = 0.0;
    std::vector<int> exponents;
};

// Truncated orthonormal frame of the Hardy or Bergman space of a model
// domain. The kernel's orthonormal expansion converges geometrically on
// compact subsets, so a finite frame reproduces S(p,p) to any tolerance.
struct BasisFrame {
    DomainSpec domain;
    KernelKind kind;
    NumericConfig config;
    int cutoff = 0;
    std::vector<BasisElement> fns;
};

namespace detail {

// Multinomial k!/alpha! as a product of binomial factors.
inline double multinomial(int k, const std::vector<int>& alpha) {
    double acc = 1.0;
    int rem = k;
    for (int a : alpha) {
        // C(rem, a)
        for (int i = 1; i <= a; ++i) acc = acc * (rem - a + i) / i;
        rem -= a;
    }
    return acc;
}

inline void enumerate_multiindices(int n, int degree,
                                   std::vector<std::vector<int>>& out) {
    std::vector<int> alpha(n, 0);
    // Lexicographic walk over all alpha with |alpha| <= degree.
    while (true) {
        int total = 0;
        for (int a : alpha) total += a;
        if (total <= degree) out.push_back(alpha);
        int i = n - 1;
        while (i >= 0) {
            if (++alpha[i] <= degree) break;
            alpha[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

} // namespace detail

// Smallest cutoff for which the truncated on-diagonal kernel sum at radius
// |p| is within tol of the full kernel (geometric tail comparison).
inline int suggest_frame_cutoff(const DomainSpec& domain, double p_abs,
                                double tol = 1e-12) {
    const double s = p_abs * p_abs;
    if (!(s < 1.0)) throw argument_error("frame point must be interior");
    int n_pos = static_cast<int>(std::ceil(std::log(tol * (1.0 - s)) / std::log(s)));
    n_pos = std::max(n_pos, 8);
    if (domain.kind == DomainKind::Annulus) {
        const double q = domain.inner_radius * domain.inner_radius / s;
        if (!(q < 1.0)) throw argument_error("frame point must be interior");
        const int n_neg =
            static_cast<int>(std::ceil(std::log(tol * (1.0 - q)) / std::log(q)));
        n_pos = std::max(n_pos, std::max(n_neg, 8));
    }
    return n_pos + domain.dimension + 8;
}

inline BasisFrame make_frame(const DomainSpec& domain, KernelKind kind, int cutoff,
                             const NumericConfig& config = {}) {
    if (cutoff < 1) throw argument_error("frame cutoff must be >= 1");
    config.validate();
    BasisFrame frame{domain, kind, config, cutoff, {}};

    switch (domain.kind) {
    case DomainKind::UnitDisk: {
        for (int n = 0; n <= cutoff; ++n) {
            const double norm_sq = kind == KernelKind::Szego
                                       ? config.c1 * pi
                                       : pi / (n + 1.0);
            frame.fns.push_back({1.0 / std::sqrt(norm_sq), {n}});
        }
        break;
    }
    case DomainKind::Annulus: {
        const double scale = kind == KernelKind::Szego ? 2.0 / config.c1 : 1.0;
        for (int n = -cutoff; n <= cutoff; ++n) {
            const double csq = scale * annulus_coefficients(domain.inner_radius, n, kind);
            frame.fns.push_back({std::sqrt(csq), {n}});
        }
        break;
    }
    case DomainKind::UnitBall: {
        const int n = domain.dimension;
        double count = 1.0;  // C(cutoff + n, n)
        for (int j = 1; j <= n; ++j) count = count * (cutoff + j) / j;
        if (count > 2e6)
            throw precision_error(
                "ball frame would need " + std::to_string(static_cast<long long>(count)) +
                " elements; lower the cutoff or the dimension");
        std::vector<std::vector<int>> alphas;
        detail::enumerate_multiindices(n, cutoff, alphas);
        const double cpin = config.c_const(n) * std::pow(pi, n);
        for (const auto& alpha : alphas) {
            int k = 0;
            for (int a : alpha) k += a;
            // 1/||z^alpha||^2 = (n-1+k)!/(c_n pi^n alpha!) for the Hardy space,
            // (n+k)!/(pi^n alpha!) for the Bergman space.
            double csq = detail::multinomial(k, alpha);
            if (kind == KernelKind::Szego) {
                for (int j = 1; j <= n - 1; ++j) csq *= (k + j);
                csq /= cpin;
            } else {
                for (int j = 1; j <= n; ++j) csq *= (k + j);
                csq /= std::pow(pi, n);
            }
            frame.fns.push_back({std::sqrt(csq), alpha});
        }
        break;
    }
    default:
        throw capability_error("frames exist for disk, annulus and ball only");
    }
    return frame;
}

// Evaluation vector e (phi_a(p)) and directional-derivative vector
// d (xi . grad phi_a(p)) over the frame.
inline void frame_vectors(const BasisFrame& frame, const PointDir& at, cvector& e,
                          cvector& d) {
    require_interior(frame.domain, at.z);
    require_direction(at.xi);
    const int n = static_cast<int>(at.z.size());
    e.resize(frame.fns.size());
    d.resize(frame.fns.size());
    for (std::size_t i = 0; i < frame.fns.size(); ++i) {
        const auto& el = frame.fns[i];
        complexd val = el.coef;
        for (int j = 0; j < n; ++j) val *= detail::signed_pow(at.z[j], el.exponents[j]);
        e[i] = val;
        complexd dd = 0.0;
        for (int j = 0; j < n; ++j) {
            if (el.exponents[j] == 0) continue;
            complexd term = el.coef * double(el.exponents[j]) *
                            detail::signed_pow(at.z[j], el.exponents[j] - 1);
            for (int l = 0; l < n; ++l)
                if (l != j) term *= detail::signed_pow(at.z[l], el.exponents[l]);
            dd += at.xi[j] * term;
        }
        d[i] = dd;
    }
}

// Exact solution of sup{ |xi g(p)|^2 : g in span, g(p) = 0, ||g|| = 1 } / S(p,p)
// over the truncated frame: F^2 = (|d|^2 |e|^2 - |<d,e>|^2) / |e|^4.
inline double variational_metric(const BasisFrame& frame, const PointDir& at) {
    cvector e, d;
    frame_vectors(frame, at, e, d);
    double e2 = 0.0, d2 = 0.0;
    complexd de = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        e2 += std::norm(e[i]);
        d2 += std::norm(d[i]);
        de += d[i] * std::conj(e[i]);
    }
    if (e2 == 0.0)
        throw internal_consistency_error("frame evaluation vector vanished");
    const double f2 = (d2 * e2 - std::norm(de)) / (e2 * e2);
    return std::sqrt(std::max(f2, 0.0));
}

// Coefficients of the maximizing g (unit norm, g(p) = 0). Degenerate when the
// constrained supremum is 0, which does not occur for the kernels in scope.
inline cvector extremal_coefficients(const BasisFrame& frame, const PointDir& at) {
    cvector e, d;
    frame_vectors(frame, at, e, d);
    double e2 = 0.0;
    complexd p = 0.0;  // sum e_a conj(d_a)
    for (std::size_t i = 0; i < e.size(); ++i) {
        e2 += std::norm(e[i]);
        p += e[i] * std::conj(d[i]);
    }
    cvector c(e.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        c[i] = std::conj(d[i]) - std::conj(e[i]) * p / e2;
        nrm += std::norm(c[i]);
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0)
        throw internal_consistency_error("constrained maximizer is degenerate");
    for (auto& ci : c) ci /= nrm;
    return c;
}

// Certified Caratheodory lower bound on the annulus: best |xi phi'(p)| over
// the restricted disk automorphism z -> (z-p)/(1-pbar z) and the inversion-
// precomposed map z -> m_q(r/z) with q = r/p. Both send p to 0 and map the
// annulus into the unit disk.
inline double annulus_caratheodory_lower_bound(double r, complexd p, complexd xi) {
    if (!(r > 0.0 && r < 1.0)) throw argument_error("inner radius out of range");
    const double ap2 = std::norm(p);
    if (!(ap2 > r * r && ap2 < 1.0))
        throw argument_error("point must lie inside the annulus");
    const double direct = std::abs(xi) / (1.0 - ap2);
    const double inverted = std::abs(xi) * r / (ap2 - r * r);
    return std::max(direct, inverted);
}

} // namespace szegolab
