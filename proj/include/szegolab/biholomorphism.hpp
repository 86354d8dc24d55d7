#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "szegolab/kernels.hpp"
#include "szegolab/linalg.hpp"
#include "szegolab/metrics.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

enum class AutomorphismFamily {
    DiskMobius,
    DiskRotation,
    AnnulusRotation,
    AnnulusInversion,
    BallAutomorphism,
    Composite,
};

// A concrete biholomorphism with Jacobian data and a fixed holomorphic branch
// of (det J_C Phi)^{n/(n+1)}. Branches are explicit per-family formulas, never
// numerical continuation, so the branch hypothesis is checkable pointwise:
// branch_power(z)^{n+1} == jac_det(z)^n.
struct AutomorphismMap {
    AutomorphismFamily family = AutomorphismFamily::DiskRotation;
    int n = 1;
    DomainSpec source, target;
    std::function<cvector(const cvector&)> forward;
    std::function<cvector(const cvector&)> inverse;
    std::function<complexd(const cvector&)> jac_det;
    std::function<CMat(const cvector&)> jac;
    std::function<complexd(const cvector&)> branch_power;
    std::string label;
};

inline AutomorphismMap disk_rotation(double theta) {
    const complexd rot(std::cos(theta), std::sin(theta));
    const complexd half(std::cos(theta / 2.0), std::sin(theta / 2.0));
    AutomorphismMap m;
    m.family = AutomorphismFamily::DiskRotation;
    m.source = m.target = DomainSpec::disk();
    m.forward = [rot](const cvector& z) { return cvector{rot * z[0]}; };
    m.inverse = [rot](const cvector& w) { return cvector{w[0] / rot}; };
    m.jac_det = [rot](const cvector&) { return rot; };
    m.jac = [rot](const cvector&) {
        CMat j(1, 1);
        j(0, 0) = rot;
        return j;
    };
    m.branch_power = [half](const cvector&) { return half; };
    m.label = "disk-rotation";
    return m;
}

inline AutomorphismMap disk_mobius(complexd a, double theta) {
    if (!(std::abs(a) < 1.0)) throw argument_error("Moebius parameter must lie in the disk");
    const complexd rot(std::cos(theta), std::sin(theta));
    const complexd half(std::cos(theta / 2.0), std::sin(theta / 2.0));
    const double s2 = 1.0 - std::norm(a);
    AutomorphismMap m;
    m.family = AutomorphismFamily::DiskMobius;
    m.source = m.target = DomainSpec::disk();
    m.forward = [rot, a](const cvector& z) {
        return cvector{rot * (z[0] - a) / (1.0 - std::conj(a) * z[0])};
    };
    m.inverse = [rot, a](const cvector& w) {
        const complexd u = w[0] / rot;
        return cvector{(u + a) / (1.0 + std::conj(a) * u)};
    };
    m.jac_det = [rot, a, s2](const cvector& z) {
        const complexd d = 1.0 - std::conj(a) * z[0];
        return rot * s2 / (d * d);
    };
    m.jac = [jd = m.jac_det](const cvector& z) {
        CMat j(1, 1);
        j(0, 0) = jd(z);
        return j;
    };
    // (phi')^{1/2} = e^{i theta/2} sqrt(1-|a|^2) / (1 - abar z), holomorphic on
    // the whole disk.
    m.branch_power = [half, a, s2](const cvector& z) {
        return half * std::sqrt(s2) / (1.0 - std::conj(a) * z[0]);
    };
    m.label = "disk-mobius";
    return m;
}

inline AutomorphismMap annulus_rotation(double r, double theta) {
    AutomorphismMap m = disk_rotation(theta);
    m.family = AutomorphismFamily::AnnulusRotation;
    m.source = m.target = DomainSpec::annulus(r);
    m.label = "annulus-rotation";
    return m;
}

// z -> r/z maps the annulus r < |z| < 1 onto itself, swapping the two
// boundary circles. Branch of (-r/z^2)^{1/2}: i sqrt(r)/z, single-valued on
// the annulus (no monodromy: it is a Laurent monomial).
inline AutomorphismMap annulus_inversion(double r) {
    AutomorphismMap m;
    m.family = AutomorphismFamily::AnnulusInversion;
    m.source = m.target = DomainSpec::annulus(r);
    m.forward = [r](const cvector& z) { return cvector{r / z[0]}; };
    m.inverse = m.forward;
    m.jac_det = [r](const cvector& z) { return -r / (z[0] * z[0]); };
    m.jac = [jd = m.jac_det](const cvector& z) {
        CMat j(1, 1);
        j(0, 0) = jd(z);
        return j;
    };
    const double sr = std::sqrt(r);
    m.branch_power = [sr](const cvector& z) { return complexd(0.0, sr) / z[0]; };
    m.label = "annulus-inversion";
    return m;
}

// U . phi_a where phi_a is the standard involutive ball automorphism swapping
// 0 and a, and U is unitary.
inline AutomorphismMap ball_automorphism(const cvector& a, const CMat& unitary) {
    const int n = static_cast<int>(a.size());
    if (unitary.rows != n || unitary.cols != n)
        throw argument_error("unitary size must match the ball dimension");
    const double a2 = norm2(a);
    if (!(a2 < 1.0)) throw argument_error("ball automorphism center must be interior");
    const double s = std::sqrt(1.0 - a2);

    auto phi_a = [a, a2, s, n](const cvector& z) {
        complexd za = 0.0;
        for (int i = 0; i < n; ++i) za += z[i] * std::conj(a[i]);
        const complexd d = 1.0 - za;
        cvector out(n);
        for (int i = 0; i < n; ++i) {
            const complexd proj = a2 > 0.0 ? (za / a2) * a[i] : complexd(0.0);
            out[i] = (a[i] - proj - s * (z[i] - proj)) / d;
        }
        return out;
    };

    CMat u = unitary;
    CMat uh = adjoint(unitary);

    AutomorphismMap m;
    m.family = AutomorphismFamily::BallAutomorphism;
    m.n = n;
    m.source = m.target = DomainSpec::ball(n);
    m.forward = [phi_a, u, n](const cvector& z) {
        const cvector y = phi_a(z);
        cvector out(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += u(i, j) * y[j];
        return out;
    };
    m.inverse = [phi_a, uh, n](const cvector& w) {
        cvector y(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += uh(i, j) * w[j];
        return phi_a(y);
    };

    // det U via small LU; constant, so compute once.
    complexd det_u = 1.0;
    {
        CMat lu = unitary;
        for (int c = 0; c < n; ++c) {
            int piv = c;
            for (int rr = c + 1; rr < n; ++rr)
                if (std::abs(lu(rr, c)) > std::abs(lu(piv, c))) piv = rr;
            if (piv != c) {
                for (int cc = 0; cc < n; ++cc) std::swap(lu(c, cc), lu(piv, cc));
                det_u = -det_u;
            }
            det_u *= lu(c, c);
            for (int rr = c + 1; rr < n; ++rr) {
                const complexd fac = lu(rr, c) / lu(c, c);
                for (int cc = c; cc < n; ++cc) lu(rr, cc) -= fac * lu(c, cc);
            }
        }
    }

    // det J(U . phi_a)(z) = det U * (-1)^n s^{n+1} / (1 - <z,a>)^{n+1}
    const complexd det_scale = det_u * (n % 2 == 0 ? 1.0 : -1.0) * std::pow(s, n + 1);
    m.jac_det = [a, det_scale, n](const cvector& z) {
        complexd za = 0.0;
        for (int i = 0; i < n; ++i) za += z[i] * std::conj(a[i]);
        return det_scale / detail::int_pow(1.0 - za, n + 1);
    };

    // J phi_a(z) = [ -P_a - s Q_a + phi_a(z) abar^T ] / (1 - <z,a>)
    m.jac = [phi_a, u, a, a2, s, n](const cvector& z) {
        complexd za = 0.0;
        for (int i = 0; i < n; ++i) za += z[i] * std::conj(a[i]);
        const complexd d = 1.0 - za;
        const cvector y = phi_a(z);
        CMat jp(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const complexd paij =
                    a2 > 0.0 ? a[i] * std::conj(a[j]) / a2 : complexd(0.0);
                const complexd qaij = (i == j ? complexd(1.0) : complexd(0.0)) - paij;
                jp(i, j) = (-paij - s * qaij + y[i] * std::conj(a[j])) / d;
            }
        return u * jp;
    };

    // branch nu * s^n / (1-<z,a>)^n with nu^{n+1} = (det U (-1)^n)^n, nu from
    // the principal logarithm of the unimodular constant.
    const complexd y0 = det_u * (n % 2 == 0 ? 1.0 : -1.0);
    const complexd nu = std::exp(std::log(y0) * (double(n) / (n + 1.0)));
    const double sn = std::pow(s, n);
    m.branch_power = [a, nu, sn, n](const cvector& z) {
        complexd za = 0.0;
        for (int i = 0; i < n; ++i) za += z[i] * std::conj(a[i]);
        return nu * sn / detail::int_pow(1.0 - za, n);
    };
    m.label = "ball-automorphism";
    return m;
}

// Composite outer . inner; Jacobian data composes by the chain rule and the
// branch power is the product of the factor branches, so the cocycle identity
// holds by construction and stays checkable.
inline AutomorphismMap compose(const AutomorphismMap& outer, const AutomorphismMap& inner) {
    if (outer.n != inner.n) throw argument_error("composition dimension mismatch");
    AutomorphismMap m;
    m.family = AutomorphismFamily::Composite;
    m.n = inner.n;
    m.source = inner.source;
    m.target = outer.target;
    m.forward = [o = outer.forward, i = inner.forward](const cvector& z) {
        return o(i(z));
    };
    m.inverse = [o = outer.inverse, i = inner.inverse](const cvector& w) {
        return i(o(w));
    };
    m.jac_det = [od = outer.jac_det, inf = inner.forward,
                 idet = inner.jac_det](const cvector& z) {
        return od(inf(z)) * idet(z);
    };
    m.jac = [oj = outer.jac, inf = inner.forward, ij = inner.jac](const cvector& z) {
        return oj(inf(z)) * ij(z);
    };
    m.branch_power = [ob = outer.branch_power, inf = inner.forward,
                      ib = inner.branch_power](const cvector& z) {
        return ob(inf(z)) * ib(z);
    };
    m.label = outer.label + "." + inner.label;
    return m;
}

// |branch^{n+1} - det^n| / |det^n| at a point.
inline double branch_consistency_residual(const AutomorphismMap& m, const cvector& z) {
    const complexd lhs = detail::int_pow(m.branch_power(z), m.n + 1);
    const complexd rhs = detail::int_pow(m.jac_det(z), m.n);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

inline void require_branch_consistency(const AutomorphismMap& m, const cvector& z) {
    if (branch_consistency_residual(m, z) > 1e-12)
        throw branch_error("branch_power^{n+1} != jac_det^n at a requested point");
}

// S1(z,w) = S2(Phi z, Phi w) branch(z) conj(branch(w)); relative residual.
inline double check_szego_law(const AutomorphismMap& m, const cvector& z,
                              const cvector& w, const NumericConfig& config = {}) {
    require_branch_consistency(m, z);
    require_branch_consistency(m, w);
    const KernelEvaluator s1(m.source, KernelKind::Szego, config);
    const KernelEvaluator s2(m.target, KernelKind::Szego, config);
    const complexd lhs = s1.eval(z, w);
    const complexd rhs = s2.eval(m.forward(z), m.forward(w)) * m.branch_power(z) *
                         std::conj(m.branch_power(w));
    return std::abs(lhs - rhs) / std::abs(lhs);
}

// K1(z,w) = det(z) K2(Phi z, Phi w) conj(det(w)); relative residual.
inline double check_bergman_law(const AutomorphismMap& m, const cvector& z,
                                const cvector& w, const NumericConfig& config = {}) {
    const KernelEvaluator k1(m.source, KernelKind::Bergman, config);
    const KernelEvaluator k2(m.target, KernelKind::Bergman, config);
    const complexd lhs = k1.eval(z, w);
    const complexd rhs = m.jac_det(z) * k2.eval(m.forward(z), m.forward(w)) *
                         std::conj(m.jac_det(w));
    return std::abs(lhs - rhs) / std::abs(lhs);
}

// F1(z, xi) = F2(Phi z, J Phi(z) xi); relative residual.
inline double check_metric_invariance(const AutomorphismMap& m, const PointDir& at,
                                      KernelKind kind, const NumericConfig& config = {}) {
    const KernelEvaluator k1(m.source, kind, config);
    const KernelEvaluator k2(m.target, kind, config);
    const CMat j = m.jac(at.z);
    cvector xi2(m.n, 0.0);
    for (int i = 0; i < m.n; ++i)
        for (int l = 0; l < m.n; ++l) xi2[i] += j(i, l) * at.xi[l];
    const double lhs = hessian_metric(k1, at);
    const double rhs = hessian_metric(k2, {m.forward(at.z), xi2});
    return std::abs(lhs - rhs) / std::abs(lhs);
}

// SK1(z,w) = SK2(Phi z, Phi w); relative residual.
inline double check_sk_invariance(const AutomorphismMap& m, const cvector& z,
                                  const cvector& w, const NumericConfig& config = {}) {
    const complexd lhs = sk_function(m.source, z, w, config);
    const complexd rhs = sk_function(m.target, m.forward(z), m.forward(w), config);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

} // namespace szegolab
