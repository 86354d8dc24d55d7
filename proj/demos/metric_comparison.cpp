// Walks a radial line through an annulus and prints the Szego, Bergman and
// lower-bound Caratheodory values side by side, plus the SK invariant.
//
//   ./metric_comparison [inner_radius]

#include <cstdio>
#include <cstdlib>

#include "szegolab/szegolab.hpp"

using namespace szegolab;

int main(int argc, char** argv) {
    const double r = argc > 1 ? std::atof(argv[1]) : 0.2;
    const DomainSpec dom = DomainSpec::annulus(r);
    const KernelEvaluator szego(dom, KernelKind::Szego);
    const KernelEvaluator bergman(dom, KernelKind::Bergman);

    std::printf("annulus %g < |z| < 1, direction xi = 1\n", r);
    std::printf("%8s %12s %12s %12s %14s\n", "|z|", "F_S", "F_B", "F_C lower", "SK(z,z)");
    for (double t = 0.1; t < 1.0; t += 0.1) {
        const double rho = r + t * (1.0 - r);
        if (rho >= 1.0 - 0.05) break;
        const PointDir at{{complexd(rho)}, {complexd(1.0)}};
        const double fs = hessian_metric(szego, at);
        const double fb = hessian_metric(bergman, at);
        const double fc = annulus_caratheodory_lower_bound(r, rho, 1.0);
        const double sk = sk_function(dom, at.z, at.z).real();
        std::printf("%8.3f %12.6f %12.6f %12.6f %14.8f\n", rho, fs, fb, fc, sk);
    }
    std::printf("\ndisk for comparison: SK is the constant 1/(4 pi) = %.8f\n",
                sk_function(DomainSpec::disk(), {complexd(0.3)}, {complexd(0.3)}).real());
    return 0;
}
