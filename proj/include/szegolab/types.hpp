#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "szegolab/errors.hpp"

namespace szegolab {

using complexd = std::complex<double>;
using cvector = std::vector<complexd>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Distance-to-boundary floor below which kernel/metric evaluation refuses to
// run; closer points lose too many digits to cancellation.
inline constexpr double interior_margin = 1e-8;

enum class DomainKind { UnitDisk, Annulus, UnitBall, PlanarCurve };
enum class KernelKind { Szego, Bergman };

// One boundary component of a planar curve domain, t in [0, 2pi).
struct CurveComponent {
    std::function<complexd(double)> gamma;
    std::function<complexd(double)> dgamma;
};

// Discretized boundary of a planar domain. nodes must be a power of 2 >= 64.
struct CurveSpec {
    std::vector<CurveComponent> components;
    int nodes = 256;
    std::string name;

    void validate() const {
        if (components.empty() || components.size() > 2)
            throw argument_error("CurveSpec: 1 or 2 components required");
        if (nodes < 64 || (nodes & (nodes - 1)) != 0)
            throw argument_error("CurveSpec: nodes must be a power of 2 >= 64");
    }
};

// Tagged description of a model domain.
struct DomainSpec {
    DomainKind kind = DomainKind::UnitDisk;
    double inner_radius = 0.0;  // Annulus only, in (0,1)
    int dimension = 1;          // UnitBall only; 1 for planar kinds
    std::optional<CurveSpec> curve;

    static DomainSpec disk() { return {DomainKind::UnitDisk, 0.0, 1, std::nullopt}; }

    static DomainSpec annulus(double r) {
        if (!(r > 0.0 && r < 1.0))
            throw argument_error("annulus: inner radius must lie strictly in (0,1)");
        return {DomainKind::Annulus, r, 1, std::nullopt};
    }

    static DomainSpec ball(int n) {
        if (n < 1) throw argument_error("ball: dimension must be >= 1");
        if (n > 12) throw argument_error("ball: dimension capped at 12");
        return {DomainKind::UnitBall, 0.0, n, std::nullopt};
    }

    static DomainSpec planar_curve(CurveSpec c) {
        c.validate();
        DomainSpec d{DomainKind::PlanarCurve, 0.0, 1, std::move(c)};
        return d;
    }
};

// Interior point plus direction; xi must be nonzero when a metric is taken.
struct PointDir {
    cvector z;
    cvector xi;
};

// Numeric knobs shared across modules. The dimensional constant of the
// Fefferman measure is conventional: c1 = 2 makes the planar measure equal
// arclength, cn = 1 is the usual choice for n >= 2.
struct NumericConfig {
    int series_cutoff = 64;
    double fd_step = 1e-5;
    double c1 = 2.0;
    double cn = 1.0;

    void validate() const {
        if (series_cutoff < 1) throw argument_error("series_cutoff must be >= 1");
        if (!(fd_step > 0.0 && fd_step <= 1e-2))
            throw argument_error("fd_step must lie in (0, 1e-2]");
        if (!(c1 > 0.0) || !(cn > 0.0))
            throw argument_error("dimensional constants must be positive");
    }

    // Dimensional constant appropriate for a given complex dimension.
    double c_const(int n) const { return n == 1 ? c1 : cn; }
};

inline double norm2(const cvector& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

inline double vec_abs(const cvector& v) { return std::sqrt(norm2(v)); }

inline void require_dimension(const DomainSpec& d, const cvector& z) {
    const std::size_t want = d.kind == DomainKind::UnitBall
                                 ? static_cast<std::size_t>(d.dimension)
                                 : 1u;
    if (z.size() != want)
        throw argument_error("point dimension " + std::to_string(z.size()) +
                             " does not match domain dimension " + std::to_string(want));
}

// Winding number of the curve around z, evaluated with the curve's own nodes.
inline int winding_number(const CurveSpec& c, complexd z) {
    complexd acc = 0.0;
    const double h = 2.0 * pi / c.nodes;
    for (const auto& comp : c.components) {
        for (int m = 0; m < c.nodes; ++m) {
            const double t = m * h;
            acc += comp.dgamma(t) / (comp.gamma(t) - z);
        }
    }
    acc *= h / (2.0 * pi * complexd(0.0, 1.0));
    return static_cast<int>(std::lround(acc.real()));
}

// Signed distance to the boundary; positive inside, negative outside.
inline double boundary_distance(const DomainSpec& d, const cvector& z) {
    require_dimension(d, z);
    switch (d.kind) {
    case DomainKind::UnitDisk:
        return 1.0 - std::abs(z[0]);
    case DomainKind::Annulus: {
        const double a = std::abs(z[0]);
        return std::min(a - d.inner_radius, 1.0 - a);
    }
    case DomainKind::UnitBall:
        return 1.0 - vec_abs(z);
    case DomainKind::PlanarCurve: {
        // Node-distance proxy: exact distance is not needed, only a margin.
        double dist = std::numeric_limits<double>::max();
        const double h = 2.0 * pi / d.curve->nodes;
        for (const auto& comp : d.curve->components)
            for (int m = 0; m < d.curve->nodes; ++m)
                dist = std::min(dist, std::abs(comp.gamma(m * h) - z[0]));
        return winding_number(*d.curve, z[0]) != 0 ? dist : -dist;
    }
    }
    return -1.0;
}

// Strict interior test.
inline bool contains(const DomainSpec& d, const cvector& z) {
    return boundary_distance(d, z) > 0.0;
}

inline void require_interior(const DomainSpec& d, const cvector& z) {
    const double dist = boundary_distance(d, z);
    if (dist <= 0.0)
        throw argument_error("point is not strictly interior to the domain");
    if (dist < interior_margin)
        throw margin_error("point is closer than 1e-8 to the boundary");
}

inline void require_direction(const cvector& xi) {
    if (norm2(xi) == 0.0) throw argument_error("direction xi must be nonzero");
}

} // namespace szegolab
