#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "szegolab/boundaryquad.hpp"
#include "szegolab/linalg.hpp"
#include "szegolab/types.hpp"
#include "szegolab/variational.hpp"

namespace szegolab {

// Kernel assembled from quadrature + Gram orthonormalization of monomials
// z^k, k in [lo, hi]: K(z,w) = sum_j psi_j(z) conj(psi_j(w)) with
// psi_j = sum_k W(k,j) z^{e_k}. Immutable once built.
struct NumericKernel {
    KernelKind kind = KernelKind::Szego;
    std::vector<int> exponents;
    CMat coeff;                      // Loewdin-whitened coefficient matrix
    std::vector<WeightedNode> quad;  // measure nodes (for reproducing integrals)
    double gram_residual = 0.0;
    double cond = 0.0;

    complexd eval(complexd z, complexd w) const {
        const int m = static_cast<int>(exponents.size());
        cvector mz(m), mw(m);
        for (int k = 0; k < m; ++k) {
            mz[k] = detail::signed_pow(z, exponents[k]);
            mw[k] = detail::signed_pow(w, exponents[k]);
        }
        complexd acc = 0.0;
        for (int j = 0; j < m; ++j) {
            complexd pz = 0.0, pw = 0.0;
            for (int k = 0; k < m; ++k) {
                pz += coeff(k, j) * mz[k];
                pw += coeff(k, j) * mw[k];
            }
            acc += pz * std::conj(pw);
        }
        return acc;
    }
};

namespace detail {

inline NumericKernel orthonormalize(KernelKind kind, std::vector<int> exponents,
                                    std::vector<WeightedNode> quad) {
    const int m = static_cast<int>(exponents.size());
    const int nn = static_cast<int>(quad.size());

    // Node-value matrix V(i,k) = sqrt(w_i) m_k(z_i); every Gram below is a
    // V^H V assembly of rank-one terms, so no cancellation enters the
    // orthogonality bookkeeping even at large condition numbers.
    CMat v(nn, m);
    for (int i = 0; i < nn; ++i) {
        const double sw = std::sqrt(quad[i].weight);
        for (int k = 0; k < m; ++k)
            v(i, k) = sw * signed_pow(quad[i].z[0], exponents[k]);
    }

    // Norm-equilibrate first: Laurent bases on two-component curves carry
    // diagonal dynamic range ~r^{-(2N+1)} that whitening absorbs exactly;
    // only the normalized (correlation) Gram measures genuine basis mixing,
    // which is what actually degrades orthonormalization.
    std::vector<double> scale(m);
    for (int k = 0; k < m; ++k) {
        double d = 0.0;
        for (int i = 0; i < nn; ++i) d += std::norm(v(i, k));
        if (!(d > 0.0)) throw precision_error("monomial with nonpositive norm");
        scale[k] = 1.0 / std::sqrt(d);
        for (int i = 0; i < nn; ++i) v(i, k) *= scale[k];
    }

    CMat gram_n = adjoint(v) * v;
    const auto eigs = hermitian_eigenvalues(gram_n);
    const double lo = eigs.front(), hi = eigs.back();
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw degrade_degree_error(
            "normalized Gram condition number " + std::to_string(hi / lo) +
                " exceeds 1e12; reduce the degree range",
            lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity(),
            exponents.back() - 1);

    double cond = 0.0;
    const CMat w1 = loewdin_inverse_sqrt(gram_n, cond);
    // Symmetric re-orthogonalization: whiten once more against the Gram of
    // the already-whitened node values, which is well conditioned.
    const CMat b = v * w1;
    double cond2 = 0.0;
    const CMat w2 = loewdin_inverse_sqrt(adjoint(b) * b, cond2);
    CMat w = w1 * w2;
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) w(j, k) *= scale[j];

    NumericKernel k;
    k.kind = kind;
    k.exponents = std::move(exponents);
    k.coeff = std::move(w);
    const CMat c = b * w2;
    k.gram_residual = max_abs_deviation_from_identity(adjoint(c) * c);
    k.cond = cond;
    k.quad = std::move(quad);
    return k;
}

} // namespace detail

// Boundary (Hardy-space) kernel: trapezoid rule on each curve component under
// the measure (c1/2) ds.
inline NumericKernel build_szego(const CurveSpec& curve, int deg_lo, int deg_hi,
                                 const NumericConfig& config = {}) {
    curve.validate();
    if (deg_lo > deg_hi) throw argument_error("empty degree range");
    if (deg_lo < 0 && curve.components.size() != 2)
        throw argument_error(
            "negative exponents require a two-component (annulus-like) curve");

    std::vector<WeightedNode> quad;
    const double h = 2.0 * pi / curve.nodes;
    for (const auto& comp : curve.components) {
        for (int mnode = 0; mnode < curve.nodes; ++mnode) {
            const double t = mnode * h;
            quad.push_back({{comp.gamma(t)},
                            0.5 * config.c1 * std::abs(comp.dgamma(t)) * h});
        }
    }

    std::vector<int> exps;
    for (int k = deg_lo; k <= deg_hi; ++k) exps.push_back(k);
    return detail::orthonormalize(KernelKind::Szego, std::move(exps), std::move(quad));
}

// Area (Bergman-space) kernel on the disk or annulus via a polar tensor grid:
// trapezoid in the angle, Gauss-Legendre radially (log-substituted composite
// panels on the annulus so Laurent powers integrate to machine accuracy).
inline NumericKernel build_bergman(const DomainSpec& domain, int deg_lo, int deg_hi,
                                   const NumericConfig& config = {}) {
    config.validate();
    if (deg_lo > deg_hi) throw argument_error("empty degree range");
    if (domain.kind != DomainKind::UnitDisk && domain.kind != DomainKind::Annulus)
        throw capability_error("area kernels are built on the disk or annulus");
    if (deg_lo < 0 && domain.kind != DomainKind::Annulus)
        throw argument_error("negative exponents require the annulus");

    int theta = 64;
    while (theta < 2 * (deg_hi - deg_lo) + 2) theta *= 2;
    const double h = 2.0 * pi / theta;

    Quadrature1D radial;
    if (domain.kind == DomainKind::UnitDisk) {
        radial = gauss_legendre_on(0.0, 1.0, deg_hi + 8);
    } else {
        // u = log t; integrands e^{cu} with |c| <= 2 max(|lo|, hi) + 2.
        const double ell = std::log(1.0 / domain.inner_radius);
        const int cmax = 2 * std::max(std::abs(deg_lo), std::abs(deg_hi)) + 2;
        const int panels = std::max(2, static_cast<int>(std::ceil(ell * cmax / 8.0)));
        for (int p = 0; p < panels; ++p) {
            const double u0 = -ell + ell * p / panels;
            const double u1 = -ell + ell * (p + 1) / panels;
            const auto panel = gauss_legendre_on(u0, u1, 16);
            for (int i = 0; i < 16; ++i) {
                radial.x.push_back(std::exp(panel.x[i]));
                // du = dt/t, so weight gains a factor t.
                radial.w.push_back(panel.w[i] * std::exp(panel.x[i]));
            }
        }
    }

    std::vector<WeightedNode> quad;
    quad.reserve(radial.x.size() * theta);
    for (std::size_t i = 0; i < radial.x.size(); ++i) {
        const double t = radial.x[i];
        const double wt = radial.w[i] * t * h;  // dA = t dt dtheta
        for (int mnode = 0; mnode < theta; ++mnode) {
            const double th = mnode * h;
            quad.push_back({{t * complexd(std::cos(th), std::sin(th))}, wt});
        }
    }

    std::vector<int> exps;
    for (int k = deg_lo; k <= deg_hi; ++k) exps.push_back(k);
    return detail::orthonormalize(KernelKind::Bergman, std::move(exps), std::move(quad));
}

// | integral of K(z,.) f - f(z) | under the kernel's own measure.
inline double reproducing_residual(const NumericKernel& kernel,
                                   const std::function<complexd(complexd)>& f,
                                   complexd z) {
    complexd acc = 0.0;
    for (const auto& nd : kernel.quad)
        acc += kernel.eval(z, nd.z[0]) * f(nd.z[0]) * nd.weight;
    return std::abs(acc - f(z));
}

// Curve registry for the CLI: "circle", "annulus:r", "ellipse:a,b".
inline CurveSpec curve_registry(const std::string& name, int nodes) {
    CurveSpec c;
    c.nodes = nodes;
    c.name = name;
    auto circle = [](double rho) {
        CurveComponent comp;
        comp.gamma = [rho](double t) { return rho * complexd(std::cos(t), std::sin(t)); };
        comp.dgamma = [rho](double t) {
            return rho * complexd(-std::sin(t), std::cos(t));
        };
        return comp;
    };
    if (name == "circle") {
        c.components.push_back(circle(1.0));
    } else if (name.rfind("annulus:", 0) == 0) {
        const double r = std::stod(name.substr(8));
        if (!(r > 0.0 && r < 1.0)) throw argument_error("annulus radius out of range");
        c.components.push_back(circle(1.0));
        c.components.push_back(circle(r));
    } else if (name.rfind("ellipse:", 0) == 0) {
        const auto rest = name.substr(8);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw argument_error("ellipse spec is ellipse:a,b");
        const double a = std::stod(rest.substr(0, comma));
        const double b = std::stod(rest.substr(comma + 1));
        if (!(a > 0.0) || !(b > 0.0)) throw argument_error("ellipse axes must be positive");
        CurveComponent comp;
        comp.gamma = [a, b](double t) { return complexd(a * std::cos(t), b * std::sin(t)); };
        comp.dgamma = [a, b](double t) {
            return complexd(-a * std::sin(t), b * std::cos(t));
        };
        c.components.push_back(comp);
    } else {
        throw argument_error("unknown curve '" + name +
                             "' (have: circle, annulus:r, ellipse:a,b)");
    }
    c.validate();
    return c;
}

} // namespace szegolab
