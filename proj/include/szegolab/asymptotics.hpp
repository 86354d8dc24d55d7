#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "szegolab/format.hpp"
#include "szegolab/kernels.hpp"
#include "szegolab/metrics.hpp"
#include "szegolab/types.hpp"

namespace szegolab {

enum class ProbeExponent { Half, Fifth };
enum class Normalization { DivSqrtLog, MulSqrtR, Raw };

inline double probe_q(ProbeExponent p) { return p == ProbeExponent::Half ? 0.5 : 0.2; }

// One annulus-limit experiment: evaluate the metric at z = r^q along a
// decreasing r-sequence and compare the normalized value to the known limit.
struct LimitExperiment {
    KernelKind kind = KernelKind::Bergman;
    ProbeExponent probe = ProbeExponent::Half;
    Normalization norm = Normalization::DivSqrtLog;
    double expected_limit = 0.0;
    double final_tolerance = 0.0;
    double extrapolation_tolerance = 1e-4;
    std::vector<double> r_sequence;
    std::string name;

    void validate() const {
        if (r_sequence.empty()) throw argument_error("empty r sequence");
        for (std::size_t i = 0; i + 1 < r_sequence.size(); ++i)
            if (!(r_sequence[i] > r_sequence[i + 1]))
                throw argument_error("r sequence must be strictly decreasing");
        if (!(r_sequence.back() >= 1e-12))
            throw argument_error("r below the 1e-12 double-precision floor");
        if (!(r_sequence.front() < 1.0)) throw argument_error("r must be below 1");
    }
};

struct LimitRow {
    double r, z, raw, normalized, expected, abs_error;
};

struct RatioRow {
    double r, z, f_szego, f_bergman, ratio;
};

inline std::vector<double> decade_sequence(int first, int last) {
    std::vector<double> rs;
    for (int k = first; k <= last; ++k) rs.push_back(std::pow(10.0, -k));
    return rs;
}

// The four classical annulus limits. The sqrt probe converges like r log(1/r), six
// decades suffice; the fifth-root probe converges like r^{1/5} and r^{2/5}
// log(1/r) and needs twelve decades for the extrapolation to settle. The
// series stays well conditioned down to the r = 1e-12 floor at these probes.
inline std::vector<LimitExperiment> default_limit_experiments() {
    std::vector<LimitExperiment> xs;
    xs.push_back({KernelKind::Bergman, ProbeExponent::Half, Normalization::DivSqrtLog,
                  2.0, 5e-3, 1e-4, decade_sequence(1, 6), "bergman-sqrt"});
    xs.push_back({KernelKind::Szego, ProbeExponent::Half, Normalization::MulSqrtR, 0.5,
                  5e-3, 1e-4, decade_sequence(1, 6), "szego-sqrt"});
    xs.push_back({KernelKind::Bergman, ProbeExponent::Fifth, Normalization::DivSqrtLog,
                  std::sqrt(2.0), 1e-2, 1e-4, decade_sequence(1, 12), "bergman-fifthroot"});
    xs.push_back({KernelKind::Szego, ProbeExponent::Fifth, Normalization::Raw, 1.0,
                  1e-2, 1e-4, decade_sequence(1, 12), "szego-fifthroot"});
    return xs;
}

inline double normalize_value(Normalization norm, double raw, double r) {
    switch (norm) {
    case Normalization::DivSqrtLog:
        return raw / std::sqrt(std::log(1.0 / r));
    case Normalization::MulSqrtR:
        return raw * std::sqrt(r);
    case Normalization::Raw:
        return raw;
    }
    throw argument_error("unknown normalization");
}

inline std::vector<LimitRow> run_limit(const LimitExperiment& exp,
                                       const NumericConfig& config = {}) {
    exp.validate();
    std::vector<LimitRow> rows;
    for (double r : exp.r_sequence) {
        const double z = std::pow(r, probe_q(exp.probe));
        try {
            const KernelEvaluator k(DomainSpec::annulus(r), exp.kind, config);
            const double raw = hessian_metric(k, {{complexd(z)}, {complexd(1.0)}});
            const double normalized = normalize_value(exp.norm, raw, r);
            rows.push_back(
                {r, z, raw, normalized, exp.expected_limit,
                 std::abs(normalized - exp.expected_limit)});
        } catch (const precision_error& e) {
            const std::string last =
                rows.empty() ? "none" : fmt_double(rows.back().r);
            throw precision_error(std::string(e.what()) +
                                  " (last trustworthy row: r = " + last + ")");
        }
    }
    return rows;
}

namespace detail {

inline double aitken_step(double v1, double v2, double v3) {
    const double d1 = v2 - v1, d2 = v3 - v2;
    if (d1 == 0.0 || d2 == d1) return v3;
    const double theta = d2 / d1;
    if (!(std::abs(theta) < 1.0)) return v3;  // not settling; report last value
    return v3 + d2 * theta / (1.0 - theta);
}

} // namespace detail

// Rate-fit extrapolation anchored at the sequence tail. One Aitken step fits
// the dominant geometric decay; when five rows are available a second step on
// three overlapping tail triples removes the next-order component too (the
// fifth-root probes decay with two rates, r^{1/5} and r^{2/5} log(1/r)).
inline double extrapolate_limit(const std::vector<LimitRow>& rows) {
    if (rows.size() < 3) throw argument_error("need at least three rows");
    const std::size_t n = rows.size();
    auto v = [&](std::size_t back) { return rows[n - 1 - back].normalized; };
    if (n < 5) return detail::aitken_step(v(2), v(1), v(0));
    const double w1 = detail::aitken_step(v(4), v(3), v(2));
    const double w2 = detail::aitken_step(v(3), v(2), v(1));
    const double w3 = detail::aitken_step(v(2), v(1), v(0));
    return detail::aitken_step(w1, w2, w3);
}

// F_S/F_B along an r-sequence at the chosen probe.
inline std::vector<RatioRow> run_ratio(ProbeExponent probe,
                                       const std::vector<double>& r_sequence,
                                       const NumericConfig& config = {}) {
    std::vector<RatioRow> rows;
    for (double r : r_sequence) {
        const double z = std::pow(r, probe_q(probe));
        const KernelEvaluator s(DomainSpec::annulus(r), KernelKind::Szego, config);
        const KernelEvaluator b(DomainSpec::annulus(r), KernelKind::Bergman, config);
        const PointDir at{{complexd(z)}, {complexd(1.0)}};
        const double fs = hessian_metric(s, at);
        const double fb = hessian_metric(b, at);
        rows.push_back({r, z, fs, fb, fs / fb});
    }
    return rows;
}

inline std::string limit_csv(const LimitExperiment& exp, const std::vector<LimitRow>& rows,
                             const NumericConfig& config) {
    std::string out;
    out += "# experiment=" + exp.name + ", expected=" + fmt_double(exp.expected_limit) +
           ", tolerance=" + fmt_double(exp.final_tolerance) +
           ", extrapolation_tolerance=" + fmt_double(exp.extrapolation_tolerance) + "\n";
    out += "# series_cutoff=" + std::to_string(config.series_cutoff) +
           ", c1=" + fmt_double(config.c1) + "\n";
    out += "# tolerances rest on the empirical decade-to-decade decay rate; the\n";
    out += "# extrapolated value below uses Aitken acceleration of the tail rows\n";
    out += "r,z,raw_F,normalized,expected,abs_error\n";
    for (const auto& row : rows)
        out += fmt_double(row.r) + "," + fmt_double(row.z) + "," + fmt_double(row.raw) +
               "," + fmt_double(row.normalized) + "," + fmt_double(row.expected) + "," +
               fmt_double(row.abs_error) + "\n";
    if (rows.size() >= 3)
        out += "# extrapolated=" + fmt_double(extrapolate_limit(rows)) + "\n";
    return out;
}

inline std::string ratio_csv(ProbeExponent probe, const std::vector<RatioRow>& rows,
                             const NumericConfig& config) {
    std::string out;
    out += std::string("# experiment=ratio-") +
           (probe == ProbeExponent::Half ? "sqrt" : "fifthroot") +
           ", series_cutoff=" + std::to_string(config.series_cutoff) + "\n";
    out += "r,z,f_szego,f_bergman,ratio\n";
    for (const auto& row : rows)
        out += fmt_double(row.r) + "," + fmt_double(row.z) + "," +
               fmt_double(row.f_szego) + "," + fmt_double(row.f_bergman) + "," +
               fmt_double(row.ratio) + "\n";
    return out;
}

} // namespace szegolab
