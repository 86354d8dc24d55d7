#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "szegolab/biholomorphism.hpp"
#include "szegolab/boundaryquad.hpp"
#include "szegolab/fd.hpp"
#include "szegolab/kahan.hpp"
#include "szegolab/linalg.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

struct not_strongly_pseudoconvex_error : argument_error {
    using argument_error::argument_error;
};

enum class ProbeMode { Analytic, FiniteDifference };

// Defining function rho with complex first and second partials: rho < 0
// inside, rho = 0 with drho != 0 on the boundary.
struct DefiningFunctionProbe {
    int n = 1;
    ProbeMode mode = ProbeMode::Analytic;
    std::function<double(const cvector&)> rho;
    std::function<cvector(const cvector&)> grad;   // rho_j = d rho / d z_j
    std::function<CMat(const cvector&)> hess;      // rho_{j kbar}
    std::string name;
};

// Finite-difference backed probe: only rho is supplied, derivatives come from
// second-order central differences in the 2n real coordinates.
inline DefiningFunctionProbe make_fd_probe(int n,
                                           std::function<double(const cvector&)> rho,
                                           double fd_step = 1e-4,
                                           std::string name = "fd") {
    DefiningFunctionProbe p;
    p.n = n;
    p.mode = ProbeMode::FiniteDifference;
    p.rho = rho;
    p.grad = [rho, fd_step](const cvector& z) {
        return fd::gradient_complex(rho, z, fd_step);
    };
    p.hess = [rho, fd_step](const cvector& z) {
        return fd::complex_hessian(rho, z, fd_step);
    };
    p.name = std::move(name);
    return p;
}

// Smooth positive factor h with its complex derivatives, for h * rho probes.
struct SmoothFactor {
    std::function<double(const cvector&)> h;
    std::function<cvector(const cvector&)> grad;
    std::function<CMat(const cvector&)> hess;
    std::string name;
};

inline DefiningFunctionProbe ball_probe(int n) {
    DefiningFunctionProbe p;
    p.n = n;
    p.mode = ProbeMode::Analytic;
    p.rho = [](const cvector& z) { return norm2(z) - 1.0; };
    p.grad = [n](const cvector& z) {
        cvector g(n);
        for (int j = 0; j < n; ++j) g[j] = std::conj(z[j]);
        return g;
    };
    p.hess = [n](const cvector&) { return CMat::identity(n); };
    p.name = "ball";
    return p;
}

// Probe for h * rho given analytic derivatives of both factors:
// (h rho)_j = h_j rho + h rho_j,
// (h rho)_{j kbar} = h_{j kbar} rho + h_j rho_kbar + h_kbar rho_j + h rho_{j kbar}.
inline DefiningFunctionProbe scaled_probe(const DefiningFunctionProbe& base,
                                          const SmoothFactor& f) {
    DefiningFunctionProbe p;
    p.n = base.n;
    p.mode = base.mode;
    p.rho = [b = base.rho, h = f.h](const cvector& z) { return h(z) * b(z); };
    p.grad = [base, f](const cvector& z) {
        const double rho = base.rho(z), h = f.h(z);
        const cvector gr = base.grad(z), gh = f.grad(z);
        cvector g(base.n);
        for (int j = 0; j < base.n; ++j) g[j] = gh[j] * rho + h * gr[j];
        return g;
    };
    p.hess = [base, f](const cvector& z) {
        const double rho = base.rho(z), h = f.h(z);
        const cvector gr = base.grad(z), gh = f.grad(z);
        const CMat hr = base.hess(z), hh = f.hess(z);
        CMat m(base.n, base.n);
        for (int j = 0; j < base.n; ++j)
            for (int k = 0; k < base.n; ++k)
                m(j, k) = hh(j, k) * rho + gh[j] * std::conj(gr[k]) +
                          std::conj(gh[k]) * gr[j] + h * hr(j, k);
        return m;
    };
    p.name = base.name + "*" + f.name;
    return p;
}

// Built-in smooth factors used by the independence checks. All are positive
// on a neighborhood of the unit sphere.
inline std::vector<SmoothFactor> builtin_factors(int n) {
    std::vector<SmoothFactor> fs;
    // h = 3 (constant scaling)
    fs.push_back({[](const cvector&) { return 3.0; },
                  [n](const cvector&) { return cvector(n, 0.0); },
                  [n](const cvector&) { return CMat(n, n); },
                  "3"});
    // h = 2 + Re z_1: h_1 = 1/2, second derivatives vanish.
    fs.push_back({[](const cvector& z) { return 2.0 + z[0].real(); },
                  [n](const cvector&) {
                      cvector g(n, 0.0);
                      g[0] = 0.5;
                      return g;
                  },
                  [n](const cvector&) { return CMat(n, n); },
                  "2+Re z1"});
    // h = 1 + |z|^2/2: h_j = zbar_j/2, h_{j kbar} = delta/2.
    fs.push_back({[](const cvector& z) { return 1.0 + 0.5 * norm2(z); },
                  [n](const cvector& z) {
                      cvector g(n);
                      for (int j = 0; j < n; ++j) g[j] = 0.5 * std::conj(z[j]);
                      return g;
                  },
                  [n](const cvector&) {
                      CMat m(n, n);
                      for (int j = 0; j < n; ++j) m(j, j) = 0.5;
                      return m;
                  },
                  "1+|z|^2/2"});
    // h = exp(Im z_1 / 2): d(Im z1)/dz1 = -i/2, d(Im z1)/dzbar1 = i/2.
    fs.push_back({[](const cvector& z) { return std::exp(0.5 * z[0].imag()); },
                  [n](const cvector& z) {
                      cvector g(n, 0.0);
                      g[0] = std::exp(0.5 * z[0].imag()) * complexd(0.0, -0.25);
                      return g;
                  },
                  [n](const cvector& z) {
                      CMat m(n, n);
                      m(0, 0) = std::exp(0.5 * z[0].imag()) / 16.0;
                      return m;
                  },
                  "exp(Im z1/2)"});
    return fs;
}

// Named registry used by the CLI: ball, ball-scaled, ball-h1..h3, ball-fd.
inline DefiningFunctionProbe probe_registry(const std::string& name, int n) {
    const auto fs = builtin_factors(n);
    if (name == "ball") return ball_probe(n);
    if (name == "ball-scaled") return scaled_probe(ball_probe(n), fs[0]);
    if (name == "ball-h1") return scaled_probe(ball_probe(n), fs[1]);
    if (name == "ball-h2") return scaled_probe(ball_probe(n), fs[2]);
    if (name == "ball-h3") return scaled_probe(ball_probe(n), fs[3]);
    if (name == "ball-fd")
        return make_fd_probe(n, [](const cvector& z) { return norm2(z) - 1.0; },
                             1e-4, "ball-fd");
    throw argument_error("unknown defining function '" + name +
                         "' (have: ball, ball-scaled, ball-h1, ball-h2, ball-h3, ball-fd)");
}

inline void require_boundary(const DefiningFunctionProbe& p, const cvector& z) {
    if (std::abs(p.rho(z)) > 1e-8)
        throw argument_error("point is not on the boundary (|rho| > 1e-8)");
}

// One Newton step along the real gradient onto the zero set of rho:
// dz_j = -rho * conj(rho_j) / (2 sum |rho_i|^2).
inline cvector project_to_boundary(const DefiningFunctionProbe& p, const cvector& z) {
    const double rho = p.rho(z);
    const cvector g = p.grad(z);
    double g2 = 0.0;
    for (const auto& gj : g) g2 += std::norm(gj);
    if (g2 == 0.0) throw argument_error("drho vanishes; not a defining function here");
    cvector out = z;
    for (std::size_t j = 0; j < z.size(); ++j)
        out[j] -= rho * std::conj(g[j]) / (2.0 * g2);
    return out;
}

// Determinant of the bordered complex Hessian [[0, rho_kbar],[rho_j, rho_{j kbar}]].
// Real for real rho; negative at strongly pseudoconvex boundary points.
inline double bordered_det(const DefiningFunctionProbe& p, const cvector& z) {
    require_boundary(p, z);
    const int n = p.n;
    const cvector g = p.grad(z);
    const CMat h = p.hess(z);
    CMat m(n + 1, n + 1);
    m(0, 0) = 0.0;
    for (int k = 0; k < n; ++k) m(0, k + 1) = std::conj(g[k]);  // rho_kbar
    for (int j = 0; j < n; ++j) {
        m(j + 1, 0) = g[j];
        for (int k = 0; k < n; ++k) m(j + 1, k + 1) = h(j, k);
    }
    // LU with partial pivoting.
    complexd det = 1.0;
    for (int c = 0; c <= n; ++c) {
        int piv = c;
        for (int r = c + 1; r <= n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (std::abs(m(piv, c)) == 0.0) return 0.0;
        if (piv != c) {
            for (int cc = 0; cc <= n; ++cc) std::swap(m(c, cc), m(piv, cc));
            det = -det;
        }
        det *= m(c, c);
        for (int r = c + 1; r <= n; ++r) {
            const complexd fac = m(r, c) / m(c, c);
            for (int cc = c; cc <= n; ++cc) m(r, cc) -= fac * m(c, cc);
        }
    }
    return det.real();
}

// d sigma_F / d sigma_E = c_n (-det)^{1/(n+1)} / ||d rho||, with ||d rho|| the
// Euclidean norm of the full real gradient (= 2 |(rho_1..rho_n)| for real rho).
// That convention reproduces d sigma_F = (c_n/2) d sigma_E on the unit sphere.
inline double fefferman_density(const DefiningFunctionProbe& p, const cvector& z_in,
                                const NumericConfig& config = {}) {
    require_boundary(p, z_in);
    const cvector z = project_to_boundary(p, z_in);
    const double det = bordered_det(p, z);
    if (det >= 0.0)
        throw not_strongly_pseudoconvex_error(
            "bordered Hessian determinant is nonnegative at this point");
    const cvector g = p.grad(z);
    double g2 = 0.0;
    for (const auto& gj : g) g2 += std::norm(gj);
    const double grad_norm = 2.0 * std::sqrt(g2);
    return config.c_const(p.n) * std::pow(-det, 1.0 / (p.n + 1.0)) / grad_norm;
}

namespace detail {

struct PullbackSides {
    double lhs, rhs;
};

template <typename F>
PullbackSides pullback_sides(const AutomorphismMap& map, F&& fsq,
                             const std::vector<WeightedNode>& nodes, double power,
                             double measure_scale) {
    CompensatedSum<double> lhs, rhs;
    for (const auto& nd : nodes) {
        lhs.add(fsq(nd.z) * nd.weight);
        rhs.add(fsq(map.forward(nd.z)) * std::pow(std::abs(map.jac_det(nd.z)), power) *
                nd.weight);
    }
    return {lhs.value() * measure_scale, rhs.value() * measure_scale};
}

} // namespace detail

// Measure transformation check: |f|^2 integrated against sigma_F on the target equals
// the |det J|^{2n/(n+1)}-weighted pullback on the source. Returns |LHS - RHS|
// at the finest refinement level; three refinement levels guard convergence.
inline double pullback_residual(const AutomorphismMap& map,
                                const std::function<complexd(const cvector&)>& f,
                                int nodes, const NumericConfig& config = {}) {
    const double power = 2.0 * map.n / (map.n + 1.0);
    auto fsq = [&f](const cvector& z) { return std::norm(f(z)); };

    auto boundary_nodes = [&](int level_nodes) {
        std::vector<WeightedNode> out;
        if (map.source.kind == DomainKind::UnitDisk) {
            out = circle_nodes(1.0, level_nodes);
        } else if (map.source.kind == DomainKind::Annulus) {
            out = circle_nodes(1.0, level_nodes);
            const auto inner = circle_nodes(map.source.inner_radius, level_nodes);
            out.insert(out.end(), inner.begin(), inner.end());
        } else if (map.source.kind == DomainKind::UnitBall && map.n == 2) {
            out = sphere3_nodes(level_nodes, std::max(12, level_nodes / 2));
        } else {
            throw capability_error(
                "pullback check supports planar maps and the C^2 ball");
        }
        return out;
    };
    // sigma_F = (c/2) sigma_E on the sphere/circle boundaries used here.
    const double measure_scale = config.c_const(map.n) / 2.0;

    double lhs_prev = 0.0, rhs_prev = 0.0, dl_prev = 0.0;
    double residual = 0.0;
    int level_nodes = std::max(8, nodes / 2);
    for (int level = 0; level < 3; ++level) {
        const auto sides =
            detail::pullback_sides(map, fsq, boundary_nodes(level_nodes), power,
                                   measure_scale);
        level_nodes *= 2;
        const double scale = std::max(1.0, std::abs(sides.lhs));
        if (level > 0) {
            const double dl = std::abs(sides.lhs - lhs_prev) +
                              std::abs(sides.rhs - rhs_prev);
            if (level == 2 && dl > 1e-12 * scale && dl_prev > 0.0 &&
                dl / dl_prev > 0.5)
                throw accuracy_error("pullback quadrature did not converge");
            dl_prev = dl;
        }
        lhs_prev = sides.lhs;
        rhs_prev = sides.rhs;
        residual = std::abs(sides.lhs - sides.rhs);
    }
    return residual;
}

} // namespace szegolab
