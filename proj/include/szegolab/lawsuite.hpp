#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "szegolab/biholomorphism.hpp"
#include "szegolab/fefferman.hpp"
#include "szegolab/rng.hpp"

namespace szegolab {

struct LawCheckResult {
    std::string family;
    std::string law;
    int draws = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return max_residual <= tolerance; }
};

namespace detail {

inline CMat random_unitary2(SplitMix64& rng) {
    const double th = rng.uniform(0.0, 2.0 * pi);
    const complexd p1 = rng.unit_phase(), p2 = rng.unit_phase(), p3 = rng.unit_phase();
    CMat u(2, 2);
    u(0, 0) = p1 * std::cos(th);
    u(0, 1) = -p1 * p3 * std::sin(th);
    u(1, 0) = p2 * std::sin(th);
    u(1, 1) = p2 * p3 * std::cos(th);
    return u;
}

struct Draw {
    AutomorphismMap map;
    cvector z, w, xi;
    std::function<complexd(const cvector&)> f;  // boundary test function
};

inline Draw make_draw(const std::string& family, SplitMix64& rng) {
    Draw d;
    if (family == "disk-mobius" || family == "disk-rotation") {
        d.map = family == "disk-mobius"
                    ? disk_mobius(rng.in_disk(0.6), rng.uniform(0.0, 2.0 * pi))
                    : disk_rotation(rng.uniform(0.0, 2.0 * pi));
        d.z = {rng.in_disk(0.8)};
        d.w = {rng.in_disk(0.8)};
        d.xi = {rng.unit_phase()};
        const int k = static_cast<int>(rng.uniform(0.0, 4.0));
        d.f = [k](const cvector& z) { return detail::int_pow(z[0], k); };
    } else if (family == "annulus-rotation" || family == "annulus-inversion") {
        const double r = rng.uniform(0.05, 0.4);
        d.map = family == "annulus-rotation"
                    ? annulus_rotation(r, rng.uniform(0.0, 2.0 * pi))
                    : annulus_inversion(r);
        const double lo = r + 0.2 * (1.0 - r), hi = 0.9;
        d.z = {rng.in_annulus(lo, hi)};
        d.w = {rng.in_annulus(lo, hi)};
        d.xi = {rng.unit_phase()};
        const int k = static_cast<int>(rng.uniform(0.0, 6.0)) - 2;  // Laurent exponent
        d.f = [k](const cvector& z) { return detail::signed_pow(z[0], k); };
    } else if (family == "ball-automorphism") {
        cvector a = rng.in_ball(2, 0.4);
        d.map = ball_automorphism(a, random_unitary2(rng));
        d.z = rng.in_ball(2, 0.7);
        d.w = rng.in_ball(2, 0.7);
        d.xi = rng.direction(2);
        const int k1 = static_cast<int>(rng.uniform(0.0, 3.0));
        const int k2 = static_cast<int>(rng.uniform(0.0, 3.0));
        d.f = [k1, k2](const cvector& z) {
            return detail::int_pow(z[0], k1) * detail::int_pow(z[1], k2);
        };
    } else {
        throw argument_error("unknown automorphism family '" + family + "'");
    }
    return d;
}

} // namespace detail

inline std::vector<std::string> law_suite_families() {
    return {"disk-mobius", "disk-rotation", "annulus-rotation", "annulus-inversion",
            "ball-automorphism"};
}

inline std::vector<std::string> law_suite_laws() {
    return {"szego", "bergman", "metric-szego", "metric-bergman", "sk", "measure"};
}

// Seeded randomized sweep of every transformation law over every family.
// Closed-form domains check at 1e-10, series-backed annuli at 1e-8.
inline std::vector<LawCheckResult> run_law_suite(std::uint64_t seed, int draws,
                                                 const NumericConfig& config = {},
                                                 const std::string& law_filter = "all",
                                                 const std::string& family_filter = "all") {
    std::vector<LawCheckResult> results;
    for (const auto& family : law_suite_families()) {
        if (family_filter != "all" && family_filter != family) continue;
        const bool series = family.rfind("annulus", 0) == 0;
        const double tol = series ? 1e-8 : 1e-10;
        for (const auto& law : law_suite_laws()) {
            if (law_filter != "all" && law_filter != law) continue;
            LawCheckResult res{family, law, draws, 0.0, tol};
            for (int i = 0; i < draws; ++i) {
                SplitMix64 rng(derive_seed(seed, 1000 * results.size() + i));
                const auto d = detail::make_draw(family, rng);
                double r = 0.0;
                if (law == "szego")
                    r = check_szego_law(d.map, d.z, d.w, config);
                else if (law == "bergman")
                    r = check_bergman_law(d.map, d.z, d.w, config);
                else if (law == "metric-szego")
                    r = check_metric_invariance(d.map, {d.z, d.xi}, KernelKind::Szego,
                                                config);
                else if (law == "metric-bergman")
                    r = check_metric_invariance(d.map, {d.z, d.xi}, KernelKind::Bergman,
                                                config);
                else if (law == "sk")
                    r = check_sk_invariance(d.map, d.z, d.w, config);
                else if (law == "measure")
                    r = pullback_residual(d.map, d.f,
                                          d.map.source.kind == DomainKind::UnitBall ? 32
                                                                                    : 512,
                                          config);
                res.max_residual = std::max(res.max_residual, r);
            }
            results.push_back(res);
        }
    }
    return results;
}

} // namespace szegolab
