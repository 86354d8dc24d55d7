#pragma once

#include <cmath>
#include <vector>

#include "szegolab/linalg.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

struct WeightedNode {
    cvector z;
    double weight;
};

// Trapezoid nodes on |z| = rho with arclength weights; spectrally accurate
// for smooth periodic integrands.
inline std::vector<WeightedNode> circle_nodes(double rho, int nodes) {
    std::vector<WeightedNode> out;
    out.reserve(nodes);
    const double h = 2.0 * pi / nodes;
    for (int m = 0; m < nodes; ++m) {
        const double t = m * h;
        out.push_back({{rho * complexd(std::cos(t), std::sin(t))}, rho * h});
    }
    return out;
}

// S^3 with Euclidean surface measure via z = (sqrt(1-u) e^{ia}, sqrt(u) e^{ib}):
// d sigma_E = (1/2) du da db. Gauss-Legendre in u (polynomial-exact after the
// angle averages), trapezoid in both angles. Total weight is 2 pi^2.
inline std::vector<WeightedNode> sphere3_nodes(int angle_nodes, int radial_nodes) {
    std::vector<WeightedNode> out;
    out.reserve(static_cast<std::size_t>(angle_nodes) * angle_nodes * radial_nodes);
    const Quadrature1D gl = gauss_legendre_on(0.0, 1.0, radial_nodes);
    const double ha = 2.0 * pi / angle_nodes;
    for (int i = 0; i < radial_nodes; ++i) {
        const double u = gl.x[i];
        const double r1 = std::sqrt(1.0 - u), r2 = std::sqrt(u);
        const double w = 0.5 * gl.w[i] * ha * ha;
        for (int ja = 0; ja < angle_nodes; ++ja) {
            const double a = ja * ha;
            const complexd z1 = r1 * complexd(std::cos(a), std::sin(a));
            for (int jb = 0; jb < angle_nodes; ++jb) {
                const double b = jb * ha;
                out.push_back({{z1, r2 * complexd(std::cos(b), std::sin(b))}, w});
            }
        }
    }
    return out;
}

// Volume nodes for the ball in C^2: z = t * zeta, dV = t^3 dt d sigma(zeta).
inline std::vector<WeightedNode> ball2_volume_nodes(int angle_nodes, int radial_nodes,
                                                    int shell_nodes) {
    std::vector<WeightedNode> out;
    const auto shell = sphere3_nodes(angle_nodes, radial_nodes);
    const Quadrature1D gl = gauss_legendre_on(0.0, 1.0, shell_nodes);
    for (int i = 0; i < shell_nodes; ++i) {
        const double t = gl.x[i];
        const double wt = gl.w[i] * t * t * t;
        for (const auto& nd : shell)
            out.push_back({{t * nd.z[0], t * nd.z[1]}, wt * nd.weight});
    }
    return out;
}

} // namespace szegolab
