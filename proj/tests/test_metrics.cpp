#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "szegolab/metrics.hpp"
#include "szegolab/rng.hpp"
#include "test_util.hpp"

using namespace szegolab;
using testutil::rel_err;

TEST_CASE("ball metric constants at the origin") {
    // F_S(0,xi) = sqrt(n)|xi|, F_B(0,xi) = sqrt(n+1)|xi|
    const KernelEvaluator s2(DomainSpec::ball(2), KernelKind::Szego);
    CHECK(rel_err(hessian_metric(s2, {{0.0, 0.0}, {1.0, 0.0}}), std::sqrt(2.0)) < 1e-12);

    const KernelEvaluator b3(DomainSpec::ball(3), KernelKind::Bergman);
    CHECK(rel_err(hessian_metric(b3, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}), 2.0) < 1e-12);
}

TEST_CASE("disk Szego metric away from the origin") {
    // -d dbar log(1-|z|^2) = 1/(1-|z|^2)^2, so F_S(0.5, 1) = 1/0.75.
    const KernelEvaluator s(DomainSpec::disk(), KernelKind::Szego);
    CHECK(rel_err(hessian_metric(s, {{complexd(0.5)}, {complexd(1.0)}}), 4.0 / 3.0) < 1e-12);
}

TEST_CASE("Caratheodory closed forms") {
    CHECK(caratheodory(DomainSpec::disk(), {{complexd(0.0)}, {complexd(1.0)}}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // Moebius pullback of the origin value: 1/(1-0.36)
    CHECK(caratheodory(DomainSpec::disk(), {{complexd(0.6)}, {complexd(1.0)}}) ==
          doctest::Approx(1.5625).epsilon(1e-14));
    const PointDir origin4{{0.0, 0.0, 0.0, 0.0}, {0.5, 0.5, 0.5, 0.5}};
    CHECK(caratheodory(DomainSpec::ball(4), origin4) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(
        caratheodory(DomainSpec::ball(2), {{complexd(0.1), complexd(0.0)}, {1.0, 0.0}}),
        capability_error);
    CHECK_THROWS_AS(
        caratheodory(DomainSpec::annulus(0.2), {{complexd(0.5)}, {complexd(1.0)}}),
        capability_error);
}

TEST_CASE("SK is the stated constant on ball and disk") {
    // Ball n=2, c_2=1: 1!/(2 pi)^2.
    const auto v2 = sk_function(DomainSpec::ball(2), {0.3, complexd(0.0, 0.1)},
                                {0.3, complexd(0.0, 0.1)});
    CHECK(rel_err(v2, complexd(1.0 / (4.0 * pi * pi))) < 1e-13);
    CHECK(rel_err(complexd(sk_ball_constant(2)), complexd(1.0 / (4.0 * pi * pi))) < 1e-15);

    // Disk, c_1=2: 1/(4 pi) for every z.
    const auto v1 = sk_function(DomainSpec::disk(), {complexd(0.3)}, {complexd(0.3)});
    CHECK(rel_err(v1, complexd(1.0 / (4.0 * pi))) < 1e-13);
}

TEST_CASE("SK constancy over grids") {
    for (int n : {1, 2}) {
        const auto dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        const double c = sk_ball_constant(n);
        SplitMix64 rng(100 + n);
        for (int i = 0; i < 100; ++i) {
            const cvector z = n == 1 ? cvector{rng.in_disk(0.9)} : rng.in_ball(n, 0.9);
            const auto sk = sk_function(dom, z, z);
            CHECK(std::abs(sk - complexd(c)) <= 1e-10 * c);
        }
    }
}

TEST_CASE("SK on the annulus against the brute-force oracle") {
    const double r = 0.2;
    const cvector z{complexd(0.5)};
    const auto got = sk_function(DomainSpec::annulus(r), z, z);
    const complexd s = testutil::naive_annulus_kernel(r, z[0], z[0], KernelKind::Szego, 400);
    const complexd b = testutil::naive_annulus_kernel(r, z[0], z[0], KernelKind::Bergman, 400);
    CHECK(rel_err(got, s * s / b) < 1e-12);
    // Nonconstant: a second point gives a visibly different value.
    const auto other = sk_function(DomainSpec::annulus(r), {complexd(0.7)}, {complexd(0.7)});
    CHECK(std::abs(got - other) > 1e-4 * std::abs(got));
}

TEST_CASE("SK respects the configured dimensional constant") {
    NumericConfig cfg;
    cfg.c1 = 1.0;
    const auto v = sk_function(DomainSpec::disk(), {complexd(0.2)}, {complexd(0.2)}, cfg);
    CHECK(rel_err(v, complexd(sk_ball_constant(1, cfg))) < 1e-13);
    CHECK(rel_err(v, complexd(1.0 / pi)) < 1e-13);  // 0!/(1^2 * pi)
}

TEST_CASE("E vanishes identically on ball and disk") {
    SplitMix64 rng(5);
    CHECK(std::abs(e_quantity(DomainSpec::ball(2), {{0.3, 0.1}, {0.7, complexd(0, 0.4)}})) <
          1e-10);
    CHECK(std::abs(e_quantity(DomainSpec::disk(), {{complexd(0.7)}, {complexd(1.0)}})) <
          1e-10);
    for (int i = 0; i < 20; ++i) {
        const PointDir at{{rng.in_disk(0.9)}, {rng.unit_phase()}};
        CHECK(std::abs(e_quantity(DomainSpec::disk(), at)) < 1e-10);
    }
}

TEST_CASE("E path agreement on the annulus") {
    const auto dom = DomainSpec::annulus(0.1);
    SplitMix64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const PointDir at{{rng.in_annulus(0.3, 0.8)}, {rng.unit_phase()}};
        const double direct = e_quantity(dom, at);
        const double via_sk = e_quantity_log_sk_path(dom, at);
        CHECK(std::abs(direct - via_sk) <= 1e-8);
        CHECK(std::abs(direct) > 1e-6);  // genuinely nonzero on the annulus
    }
    // The stated example point.
    const PointDir p{{complexd(0.5)}, {complexd(1.0)}};
    CHECK(std::abs(e_quantity(dom, p) - e_quantity_log_sk_path(dom, p)) <= 1e-8);
}

TEST_CASE("ball relation F_S/F_B = sqrt(n/(n+1)) at random points") {
    for (int n : {1, 2, 3}) {
        const auto dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        const KernelEvaluator s(dom, KernelKind::Szego);
        const KernelEvaluator b(dom, KernelKind::Bergman);
        SplitMix64 rng(1000 + n);
        for (int i = 0; i < 20; ++i) {
            const PointDir at{n == 1 ? cvector{rng.in_disk(0.85)} : rng.in_ball(n, 0.85),
                              rng.direction(n)};
            const double fs = hessian_metric(s, at);
            const double fb = hessian_metric(b, at);
            CHECK(rel_err(fs / fb, std::sqrt(n / (n + 1.0))) < 1e-8);
        }
    }
}

TEST_CASE("metric positivity on interior points") {
    SplitMix64 rng(77);
    const auto dom = DomainSpec::annulus(0.25);
    const KernelEvaluator s(dom, KernelKind::Szego);
    const KernelEvaluator b(dom, KernelKind::Bergman);
    for (int i = 0; i < 50; ++i) {
        const PointDir at{{rng.in_annulus(0.3, 0.9)}, {rng.unit_phase()}};
        CHECK(hessian_metric(s, at) > 0.0);
        CHECK(hessian_metric(b, at) > 0.0);
    }
}

TEST_CASE("F_S equals F_C on the disk") {
    SplitMix64 rng(13);
    const KernelEvaluator s(DomainSpec::disk(), KernelKind::Szego);
    for (int i = 0; i < 50; ++i) {
        const PointDir at{{rng.in_disk(0.9)}, {rng.unit_phase()}};
        const double fs = hessian_metric(s, at);
        const double fc = caratheodory(DomainSpec::disk(), at);
        CHECK(rel_err(fs, fc) < 1e-10);
    }
}

TEST_CASE("F_B/F_S stays finite and bounded away from zero on a compact annulus grid") {
    const auto dom = DomainSpec::annulus(0.2);
    const KernelEvaluator s(dom, KernelKind::Szego);
    const KernelEvaluator b(dom, KernelKind::Bergman);
    for (double rho = 0.3; rho < 0.95; rho += 0.05) {
        for (double th = 0.0; th < 2.0 * pi; th += pi / 4) {
            const PointDir at{{rho * complexd(std::cos(th), std::sin(th))},
                              {complexd(1.0)}};
            const double ratio = hessian_metric(b, at) / hessian_metric(s, at);
            CHECK(std::isfinite(ratio));
            CHECK(ratio > 0.05);
            CHECK(ratio < 20.0);
        }
    }
}

TEST_CASE("metric request dispatcher") {
    MetricRequest req{DomainSpec::ball(2), MetricKind::Szego, {{0.0, 0.0}, {1.0, 0.0}}};
    CHECK(rel_err(metric(req), std::sqrt(2.0)) < 1e-12);
    req.which = MetricKind::Caratheodory;
    CHECK(rel_err(metric(req), 1.0) < 1e-12);
}

TEST_CASE("combined comparison value") {
    const auto cv = comparison(DomainSpec::annulus(0.1),
                               {{complexd(0.5)}, {complexd(1.0)}});
    CHECK(cv.sk.real() > 0.0);
    CHECK(std::abs(cv.e_val) > 1e-6);  // nonzero away from disk/ball
    const auto ball_cv = comparison(DomainSpec::ball(2), {{0.2, 0.1}, {1.0, 0.0}});
    CHECK(std::abs(ball_cv.e_val) < 1e-10);
    CHECK(rel_err(ball_cv.sk, complexd(sk_ball_constant(2))) < 1e-12);
}

TEST_CASE("division hazard guard in SK") {
    // The guard needs |K| < 1e-30, unreachable on model domains from valid
    // interior input; verify instead that on-diagonal SK is well-defined at
    // extreme-but-legal annulus points.
    const auto v = sk_function(DomainSpec::annulus(0.9), {complexd(0.95)}, {complexd(0.95)});
    CHECK(std::isfinite(v.real()));
}
