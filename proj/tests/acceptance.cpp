// Acceptance suite: runs every advertised numerical guarantee end to end and
// prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "szegolab/szegolab.hpp"

using namespace szegolab;

namespace {

struct Worst {
    double value = 0.0;

    void track(double v) { value = std::max(value, v); }
};

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

cvector boundary_point(SplitMix64& rng, int n) {
    cvector z = rng.direction(n);
    const double s = vec_abs(z);
    for (auto& c : z) c /= s;
    return z;
}

// 1. F_S(0,xi) = sqrt(n)|xi|, F_B(0,xi) = sqrt(n+1)|xi|, F_C(0,xi) = |xi|,
//    n = 1..3, relative error <= 1e-10, runtime < 1 s.
std::string ball_constants() {
    const auto start = std::chrono::steady_clock::now();
    Worst worst;
    SplitMix64 rng(default_seed);
    for (int n = 1; n <= 3; ++n) {
        const DomainSpec dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        const KernelEvaluator s(dom, KernelKind::Szego);
        const KernelEvaluator b(dom, KernelKind::Bergman);
        for (int rep = 0; rep < 4; ++rep) {
            const PointDir at{cvector(n, 0.0), rng.direction(n)};
            const double xi_len = vec_abs(at.xi);
            worst.track(rel(hessian_metric(s, at), std::sqrt(double(n)) * xi_len));
            worst.track(rel(hessian_metric(b, at), std::sqrt(n + 1.0) * xi_len));
            worst.track(rel(caratheodory(dom, at), xi_len));
        }
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (worst.value > 1e-10) return "max rel err " + fmt_double(worst.value) + " > 1e-10";
    if (sec >= 1.0) return "runtime " + fmt_double(sec) + " s >= 1 s";
    return "";
}

// 2. F_S/F_B = sqrt(n/(n+1)) at 50 random interior points per n, rel <= 1e-8.
std::string ball_ratio_propagation() {
    Worst worst;
    for (int n = 1; n <= 3; ++n) {
        const DomainSpec dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        const KernelEvaluator s(dom, KernelKind::Szego);
        const KernelEvaluator b(dom, KernelKind::Bergman);
        SplitMix64 rng(derive_seed(default_seed, n));
        for (int i = 0; i < 50; ++i) {
            const PointDir at{rng.in_ball(n, 0.9), rng.direction(n)};
            worst.track(rel(hessian_metric(s, at) / hessian_metric(b, at),
                            std::sqrt(n / (n + 1.0))));
        }
    }
    return worst.value <= 1e-8
               ? ""
               : "max rel err " + fmt_double(worst.value) + " > 1e-8";
}

// 3. |SK(z,z) - (n-1)!/(c_n^{n+1} (n pi)^n)| <= 1e-10 * constant on 100-point
//    disk/ball grids.
std::string sk_constancy() {
    Worst worst;
    for (int n = 1; n <= 3; ++n) {
        const DomainSpec dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        const double c = sk_ball_constant(n);
        SplitMix64 rng(derive_seed(default_seed, 10 + n));
        for (int i = 0; i < 100; ++i) {
            const cvector z = rng.in_ball(n, 0.9);
            worst.track(std::abs(sk_function(dom, z, z) - complexd(c)) / c);
        }
    }
    return worst.value <= 1e-10
               ? ""
               : "max deviation " + fmt_double(worst.value) + " > 1e-10 * constant";
}

// 4. Annulus metric limits at the final default-sequence r, plus rate-fit
//    extrapolation within 1e-4; runtime < 30 s total.
std::string annulus_limits() {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    for (const auto& exp : default_limit_experiments()) {
        const auto rows = run_limit(exp);
        const double final_err = rows.back().abs_error;
        const double extrap_err =
            std::abs(extrapolate_limit(rows) - exp.expected_limit);
        if (final_err > exp.final_tolerance)
            detail += exp.name + " final err " + fmt_double(final_err) + " > " +
                      fmt_double(exp.final_tolerance) + "; ";
        if (extrap_err > exp.extrapolation_tolerance)
            detail += exp.name + " extrapolation err " + fmt_double(extrap_err) +
                      " > 1e-4; ";
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sec >= 30.0) detail += "runtime " + fmt_double(sec) + " s >= 30 s";
    return detail;
}

// 5. F_S/F_B at sqrt(r) grows >= 10x over 1e-2..1e-6; at r^{1/5} shrinks
//    >= 3x over the default fifth-root range 1e-2..1e-8.
std::string ratio_divergence() {
    const auto up = run_ratio(ProbeExponent::Half, decade_sequence(2, 6));
    const double growth = up.back().ratio / up.front().ratio;
    const auto down = run_ratio(ProbeExponent::Fifth, decade_sequence(2, 8));
    const double shrink = down.front().ratio / down.back().ratio;
    std::string detail;
    if (growth < 10.0) detail += "sqrt-probe growth " + fmt_double(growth) + " < 10; ";
    if (shrink < 3.0) detail += "fifth-probe shrink " + fmt_double(shrink) + " < 3";
    return detail;
}

// 6. All transformation laws over 100 seeded draws per family.
std::string transformation_laws() {
    std::string detail;
    for (const auto& r : run_law_suite(default_seed, 100)) {
        if (!r.pass())
            detail += r.family + "/" + r.law + " residual " +
                      fmt_double(r.max_residual) + " > " + fmt_double(r.tolerance) + "; ";
    }
    return detail;
}

// 7. F_S = F_C on a 50-point disk grid to 1e-10; F_S >= every annulus
//    Caratheodory lower bound at 50 points.
std::string szego_vs_caratheodory() {
    Worst worst;
    const KernelEvaluator s(DomainSpec::disk(), KernelKind::Szego);
    SplitMix64 rng(derive_seed(default_seed, 70));
    for (int i = 0; i < 50; ++i) {
        const PointDir at{{rng.in_disk(0.9)}, {rng.unit_phase()}};
        worst.track(rel(hessian_metric(s, at), caratheodory(DomainSpec::disk(), at)));
    }
    if (worst.value > 1e-10)
        return "disk equality err " + fmt_double(worst.value) + " > 1e-10";
    for (double r : {0.1, 0.3}) {
        const KernelEvaluator sr(DomainSpec::annulus(r), KernelKind::Szego);
        for (int i = 0; i < 50; ++i) {
            const complexd z = rng.in_annulus(r + 0.15 * (1.0 - r), 0.9);
            const complexd xi = rng.unit_phase();
            const double fs = hessian_metric(sr, {{z}, {xi}});
            const double bound = annulus_caratheodory_lower_bound(r, z, xi);
            if (fs < bound - 1e-12)
                return "annulus bound violated at r=" + fmt_double(r) + ": F_S=" +
                       fmt_double(fs) + " < " + fmt_double(bound);
        }
    }
    return "";
}

// 8. variational_metric vs hessian_metric <= 1e-8 relative on 50 triples.
std::string oracle_equivalence() {
    Worst worst;
    SplitMix64 rng(derive_seed(default_seed, 80));
    for (int i = 0; i < 50; ++i) {
        DomainSpec dom;
        cvector z;
        const int pick = i % 5;
        if (pick == 0) {
            dom = DomainSpec::disk();
            z = {rng.in_disk(0.8)};
        } else if (pick <= 3) {
            const double r = pick == 1 ? 0.05 : (pick == 2 ? 0.1 : 0.3);
            dom = DomainSpec::annulus(r);
            z = {rng.in_annulus(r + 0.15 * (1.0 - r), 0.8)};
        } else {
            const int n = 2 + static_cast<int>(rng.uniform(0.0, 2.0));
            dom = DomainSpec::ball(n);
            z = rng.in_ball(n, 0.6);
        }
        const int n = dom.kind == DomainKind::UnitBall ? dom.dimension : 1;
        const PointDir at{z, rng.direction(n)};
        const int cutoff = suggest_frame_cutoff(dom, vec_abs(z));
        const KernelKind kind = i % 2 == 0 ? KernelKind::Szego : KernelKind::Bergman;
        worst.track(rel(variational_metric(make_frame(dom, kind, cutoff), at),
                        hessian_metric(KernelEvaluator(dom, kind), at)));
    }
    return worst.value <= 1e-8 ? ""
                               : "max rel err " + fmt_double(worst.value) + " > 1e-8";
}

// 9. Ball density c_n/2 to 1e-10; independence under three h-factors to 1e-8;
//    measure pullback residual <= 1e-10 on disk Moebius maps.
std::string fefferman_measure() {
    Worst worst;
    SplitMix64 rng(derive_seed(default_seed, 90));
    for (int n = 1; n <= 3; ++n) {
        const auto probe = ball_probe(n);
        const double expect = (n == 1 ? 2.0 : 1.0) / 2.0;
        for (int i = 0; i < 20; ++i)
            worst.track(rel(fefferman_density(probe, boundary_point(rng, n)), expect));
    }
    if (worst.value > 1e-10)
        return "ball density err " + fmt_double(worst.value) + " > 1e-10";

    Worst indep;
    for (int n : {1, 2}) {
        const auto base = ball_probe(n);
        const auto factors = builtin_factors(n);
        for (int i = 0; i < 10; ++i) {
            const cvector z = boundary_point(rng, n);
            const double ref = fefferman_density(base, z);
            for (std::size_t fi = 1; fi < factors.size(); ++fi)
                indep.track(rel(fefferman_density(scaled_probe(base, factors[fi]), z), ref));
        }
    }
    if (indep.value > 1e-8)
        return "independence err " + fmt_double(indep.value) + " > 1e-8";

    Worst pull;
    for (int i = 0; i < 10; ++i) {
        const auto m = disk_mobius(rng.in_disk(0.6), rng.uniform(0.0, 2.0 * pi));
        const int k = static_cast<int>(rng.uniform(0.0, 4.0));
        pull.track(pullback_residual(
            m, [k](const cvector& z) { return detail::int_pow(z[0], k); }, 512));
    }
    return pull.value <= 1e-10
               ? ""
               : "pullback residual " + fmt_double(pull.value) + " > 1e-10";
}

// 10. Quadrature kernels: closed-form agreement on circle/annulus <= 1e-8,
//     ellipse reproducing residual <= 1e-8, spectral-convergence ratio test.
std::string quadrature_kernels() {
    const auto disk_nk = build_szego(curve_registry("circle", 256), 0, 40);
    const KernelEvaluator disk_closed(DomainSpec::disk(), KernelKind::Szego);
    const complexd z1(0.3, 0.1), w1(-0.2, 0.4);
    if (std::abs(disk_nk.eval(z1, w1) - disk_closed.eval({z1}, {w1})) > 1e-8)
        return "circle kernel misses the closed form";

    const auto ann_nk = build_szego(curve_registry("annulus:0.5", 256), -28, 28);
    const KernelEvaluator ann_closed(DomainSpec::annulus(0.5), KernelKind::Szego);
    const complexd z2(0.7, 0.0);
    const double ann_err = std::abs(ann_nk.eval(z2, z2) - ann_closed.eval({z2}, {z2}));
    if (ann_err > 1e-8)
        return "annulus kernel err " + fmt_double(ann_err) + " > 1e-8";

    const auto ell = build_szego(curve_registry("ellipse:1,0.6", 256), 0, 30);
    const double repro = reproducing_residual(
        ell, [](complexd z) { return z * z * z; }, complexd(0.2));
    if (repro > 1e-8) return "ellipse reproducing residual " + fmt_double(repro) + " > 1e-8";

    // Spectral convergence: error at least 10x down per node doubling until
    // the 1e-12 floor (thin ellipse keeps the error visible at M = 64).
    const complexd zc(0.5, 0.0), wc(0.3, 0.05);
    auto thin = [&](int nodes) {
        return build_szego(curve_registry("ellipse:1,0.15", nodes), 0, 8).eval(zc, wc);
    };
    const complexd ref = thin(1024);
    double prev_err = std::abs(thin(64) - ref);
    for (int nodes : {128, 256}) {
        const double err = std::abs(thin(nodes) - ref);
        if (err > prev_err / 10.0 && err > 1e-12)
            return "node doubling to " + std::to_string(nodes) + " only reached err " +
                   fmt_double(err);
        prev_err = err;
    }
    return "";
}

// 11. E == 0 on ball and disk grids (<= 1e-8 absolute); E path agreement on
//     annuli <= 1e-8.
std::string e_quantity_checks() {
    Worst zero;
    SplitMix64 rng(derive_seed(default_seed, 110));
    for (int i = 0; i < 50; ++i) {
        zero.track(std::abs(
            e_quantity(DomainSpec::disk(), {{rng.in_disk(0.9)}, {rng.unit_phase()}})));
        zero.track(std::abs(
            e_quantity(DomainSpec::ball(2), {rng.in_ball(2, 0.9), rng.direction(2)})));
    }
    if (zero.value > 1e-8)
        return "|E| = " + fmt_double(zero.value) + " > 1e-8 on ball/disk";

    Worst agree;
    for (double r : {0.1, 0.2}) {
        const DomainSpec dom = DomainSpec::annulus(r);
        for (int i = 0; i < 5; ++i) {
            const PointDir at{{rng.in_annulus(r + 0.2 * (1.0 - r), 0.8)},
                              {rng.unit_phase()}};
            agree.track(std::abs(e_quantity(dom, at) - e_quantity_log_sk_path(dom, at)));
        }
    }
    return agree.value <= 1e-8
               ? ""
               : "path disagreement " + fmt_double(agree.value) + " > 1e-8";
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"ball metric constants (sqrt n, sqrt n+1, 1) to 1e-10 in < 1 s", ball_constants},
        {"F_S/F_B = sqrt(n/(n+1)) at 50 random ball points, 1e-8", ball_ratio_propagation},
        {"SK constancy on 100-point disk/ball grids, 1e-10", sk_constancy},
        {"annulus limits: final rows within caps, extrapolation within 1e-4, < 30 s",
         annulus_limits},
        {"F_S/F_B grows >= 10x at sqrt(r), shrinks >= 3x at r^(1/5)", ratio_divergence},
        {"transformation laws, 100 draws/family, 1e-8 series / 1e-10 closed",
         transformation_laws},
        {"F_S = F_C on the disk (1e-10); F_S >= annulus Caratheodory bounds",
         szego_vs_caratheodory},
        {"variational vs Hessian metric on 50 triples, 1e-8", oracle_equivalence},
        {"Fefferman density c_n/2 (1e-10), h-independence (1e-8), pullback (1e-10)",
         fefferman_measure},
        {"quadrature kernels: closed-form/reproducing 1e-8, spectral ratio",
         quadrature_kernels},
        {"E = 0 on ball/disk (1e-8); E path agreement on annuli (1e-8)",
         e_quantity_checks},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("PASS  criterion %2zu: %s\n", i + 1, criteria[i].first.c_str());
        } else {
            ++failures;
            std::printf("FAIL  criterion %2zu: %s -- %s\n", i + 1,
                        criteria[i].first.c_str(), detail.c_str());
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
