// Command-line front end: kernels, metrics, SK, Fefferman densities,
// transformation-law checks, annulus limit experiments and quadrature-built
// kernels, with CSV or JSON output. Exit codes: 0 success, 2 argument error,
// 3 numeric/precision error, 4 failed check.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "szegolab/szegolab.hpp"

using namespace szegolab;
using nlohmann::json;

namespace {

complexd parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) throw argument_error("trailing characters");
            return {re, 0.0};
        }
        const std::string res = s.substr(0, comma), ims = s.substr(comma + 1);
        const double re = std::stod(res, &used);
        if (used != res.size()) throw argument_error("trailing characters");
        const double im = std::stod(ims, &used);
        if (used != ims.size()) throw argument_error("trailing characters");
        return {re, im};
    } catch (const std::exception&) {
        throw argument_error("cannot parse complex number '" + s + "' (want re[,im])");
    }
}

cvector parse_cvector(const std::string& s) {
    cvector out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto semi = s.find(';', start);
        const std::string tok =
            semi == std::string::npos ? s.substr(start) : s.substr(start, semi - start);
        out.push_back(parse_complex(tok));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

DomainSpec parse_domain(const std::string& s) {
    if (s == "disk") return DomainSpec::disk();
    if (s.rfind("annulus:", 0) == 0) return DomainSpec::annulus(std::stod(s.substr(8)));
    if (s.rfind("ball:", 0) == 0) return DomainSpec::ball(std::stoi(s.substr(5)));
    throw argument_error("unknown domain '" + s + "' (want disk, annulus:r, ball:n)");
}

// A point in C^n: components joined with ';', each "re[,im]". A bare list of
// n comma-separated reals is also accepted ("--z 0,0" for the C^2 origin).
cvector parse_point(const std::string& s, int n) {
    try {
        cvector v = parse_cvector(s);
        if (static_cast<int>(v.size()) == n) return v;
    } catch (const argument_error&) {
    }
    if (s.find(';') == std::string::npos) {
        cvector reals;
        std::size_t start = 0;
        bool ok = true;
        while (start <= s.size()) {
            const auto comma = s.find(',', start);
            const std::string tok = comma == std::string::npos
                                        ? s.substr(start)
                                        : s.substr(start, comma - start);
            try {
                std::size_t used = 0;
                const double x = std::stod(tok, &used);
                ok = ok && used == tok.size();
                reals.push_back(complexd(x, 0.0));
            } catch (const std::exception&) {
                ok = false;
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (ok && static_cast<int>(reals.size()) == n) return reals;
    }
    throw argument_error("cannot read '" + s + "' as a point in C^" + std::to_string(n));
}

int domain_dimension(const DomainSpec& d) {
    return d.kind == DomainKind::UnitBall ? d.dimension : 1;
}

std::string csv_quote(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

json json_complex(complexd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json json_cvector(const cvector& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back(json_complex(c));
    return arr;
}

struct Output {
    std::string format = "csv";
    std::string path;

    void emit(const std::string& csv, const json& as_json) const {
        const std::string body = format == "json" ? as_json.dump(2) + "\n" : csv;
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw argument_error("cannot open output file '" + path + "'");
            f << body;
        }
    }
};

std::string config_meta(const NumericConfig& cfg, std::uint64_t seed) {
    return "# seed=" + std::to_string(seed) +
           ", series_cutoff=" + std::to_string(cfg.series_cutoff) +
           ", fd_step=" + fmt_double(cfg.fd_step) + ", c1=" + fmt_double(cfg.c1) +
           ", cn=" + fmt_double(cfg.cn) + "\n";
}

struct CommonArgs {
    NumericConfig config;
    Output out;
    std::string seed_text;

    std::uint64_t seed() const {
        if (!seed_text.empty()) return std::stoull(seed_text, nullptr, 0);
        if (const char* env = std::getenv("SZEGO_LAB_SEED"))
            return std::stoull(std::string(env), nullptr, 0);
        return default_seed;
    }
};

void add_common(CLI::App* sub, CommonArgs& c) {
    sub->add_option("--cutoff", c.config.series_cutoff, "annulus series starting cutoff");
    sub->add_option("--fd-step", c.config.fd_step, "finite-difference step");
    sub->add_option("--c1", c.config.c1, "planar dimensional constant");
    sub->add_option("--cn", c.config.cn, "ball dimensional constant (n >= 2)");
    sub->add_option("--format", c.out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out.path, "write output to a file instead of stdout");
    sub->add_option("--seed", c.seed_text, "seed (decimal or 0x hex)");
}

KernelKind parse_kind(const std::string& s) {
    if (s == "szego") return KernelKind::Szego;
    if (s == "bergman") return KernelKind::Bergman;
    throw argument_error("kind must be szego or bergman");
}

int run_kernel(const CommonArgs& c, const std::string& domain_s, const std::string& kind_s,
               const std::string& z_s, const std::string& w_s) {
    const DomainSpec dom = parse_domain(domain_s);
    const KernelEvaluator k(dom, parse_kind(kind_s), c.config);
    const int n = domain_dimension(dom);
    const cvector z = parse_point(z_s, n);
    const cvector w = w_s.empty() ? z : parse_point(w_s, n);
    const complexd v = k.eval(z, w);

    std::string csv = config_meta(c.config, c.seed());
    csv += "domain,kind,z,w,re,im\n";
    csv += csv_quote(domain_s) + "," + kind_s + "," + csv_quote(fmt_cvector(z)) + "," +
           csv_quote(fmt_cvector(w)) + "," + fmt_double(v.real()) + "," +
           fmt_double(v.imag()) + "\n";
    c.out.emit(csv, json{{"domain", domain_s},
                         {"kind", kind_s},
                         {"z", json_cvector(z)},
                         {"w", json_cvector(w)},
                         {"value", json_complex(v)}});
    return 0;
}

int run_metric(const CommonArgs& c, const std::string& domain_s, const std::string& which_s,
               const std::string& z_s, const std::string& xi_s,
               const std::string& method) {
    const DomainSpec dom = parse_domain(domain_s);
    const int n = domain_dimension(dom);
    const PointDir at{parse_point(z_s, n), parse_point(xi_s, n)};
    double value = 0.0;
    if (which_s == "caratheodory") {
        value = caratheodory(dom, at);
    } else {
        const KernelKind kind = parse_kind(which_s);
        if (method == "hessian") {
            value = hessian_metric(KernelEvaluator(dom, kind, c.config), at);
        } else if (method == "variational") {
            const int cutoff = suggest_frame_cutoff(dom, vec_abs(at.z));
            value = variational_metric(make_frame(dom, kind, cutoff, c.config), at);
        } else {
            throw argument_error("method must be hessian or variational");
        }
    }
    std::string csv = config_meta(c.config, c.seed());
    csv += "domain,which,method,z,xi,value\n";
    csv += csv_quote(domain_s) + "," + which_s + "," + method + "," +
           csv_quote(fmt_cvector(at.z)) + "," + csv_quote(fmt_cvector(at.xi)) + "," +
           fmt_double(value) + "\n";
    c.out.emit(csv, json{{"domain", domain_s},
                         {"which", which_s},
                         {"method", method},
                         {"z", json_cvector(at.z)},
                         {"xi", json_cvector(at.xi)},
                         {"value", value}});
    return 0;
}

int run_sk(const CommonArgs& c, const std::string& domain_s, const std::string& z_s,
           const std::string& w_s) {
    const DomainSpec dom = parse_domain(domain_s);
    const int n = domain_dimension(dom);
    const cvector z = parse_point(z_s, n);
    const cvector w = w_s.empty() ? z : parse_point(w_s, n);
    const complexd v = sk_function(dom, z, w, c.config);
    std::string csv = config_meta(c.config, c.seed());
    csv += "domain,z,w,re,im\n";
    csv += csv_quote(domain_s) + "," + csv_quote(fmt_cvector(z)) + "," +
           csv_quote(fmt_cvector(w)) + "," + fmt_double(v.real()) + "," +
           fmt_double(v.imag()) + "\n";
    c.out.emit(csv, json{{"domain", domain_s},
                         {"z", json_cvector(z)},
                         {"w", json_cvector(w)},
                         {"value", json_complex(v)}});
    return 0;
}

int run_fefferman(const CommonArgs& c, const std::string& rho, int n,
                  const std::string& z_s) {
    DefiningFunctionProbe probe = probe_registry(rho, n);
    if (probe.mode == ProbeMode::FiniteDifference)
        probe = make_fd_probe(
            n, [](const cvector& z) { return norm2(z) - 1.0; }, c.config.fd_step,
            "ball-fd");
    const cvector z = parse_point(z_s, n);
    const double det = bordered_det(probe, project_to_boundary(probe, z));
    const double den = fefferman_density(probe, z, c.config);
    std::string csv = config_meta(c.config, c.seed());
    csv += "rho,n,z,bordered_det,density\n";
    csv += rho + "," + std::to_string(n) + "," + csv_quote(fmt_cvector(z)) + "," +
           fmt_double(det) + "," + fmt_double(den) + "\n";
    c.out.emit(csv, json{{"rho", rho},
                         {"n", n},
                         {"z", json_cvector(z)},
                         {"bordered_det", det},
                         {"density", den}});
    return 0;
}

int run_check(const CommonArgs& c, const std::string& law, const std::string& family,
              int draws) {
    const auto results = run_law_suite(c.seed(), draws, c.config, law, family);
    if (results.empty()) throw argument_error("no (family, law) pair matches the filter");
    std::string csv = config_meta(c.config, c.seed());
    csv += "# tolerances: closed-form domains 1e-10, series-backed annuli 1e-8\n";
    csv += "family,law,draws,max_residual,tolerance,status\n";
    json rows = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass();
        csv += r.family + "," + r.law + "," + std::to_string(r.draws) + "," +
               fmt_double(r.max_residual) + "," + fmt_double(r.tolerance) + "," +
               (r.pass() ? "pass" : "FAIL") + "\n";
        rows.push_back(json{{"family", r.family},
                            {"law", r.law},
                            {"draws", r.draws},
                            {"max_residual", r.max_residual},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass()}});
    }
    c.out.emit(csv, json{{"seed", c.seed()}, {"results", rows}});
    return all_pass ? 0 : 4;
}

int run_limits(const CommonArgs& c, const std::string& metric_s, const std::string& probe_s,
               int decades, bool ratio_mode) {
    ProbeExponent probe;
    if (probe_s == "sqrt")
        probe = ProbeExponent::Half;
    else if (probe_s == "fifthroot")
        probe = ProbeExponent::Fifth;
    else
        throw argument_error("probe must be sqrt or fifthroot");

    if (ratio_mode) {
        const auto rs = decade_sequence(2, decades > 0 ? decades : 8);
        const auto rows = run_ratio(probe, rs, c.config);
        std::string csv = config_meta(c.config, c.seed()) + ratio_csv(probe, rows, c.config);
        json jrows = json::array();
        bool monotone = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0)
                monotone = monotone && (probe == ProbeExponent::Half
                                            ? rows[i].ratio > rows[i - 1].ratio
                                            : rows[i].ratio < rows[i - 1].ratio);
            jrows.push_back(json{{"r", rows[i].r},
                                 {"z", rows[i].z},
                                 {"f_szego", rows[i].f_szego},
                                 {"f_bergman", rows[i].f_bergman},
                                 {"ratio", rows[i].ratio}});
        }
        csv += std::string("# monotone=") + (monotone ? "true" : "false") + "\n";
        c.out.emit(csv, json{{"probe", probe_s}, {"rows", jrows}, {"monotone", monotone}});
        return monotone ? 0 : 4;
    }

    // Pick the matching limit experiment; --decades overrides the range.
    LimitExperiment exp;
    bool found = false;
    for (const auto& e : default_limit_experiments()) {
        if (e.kind == parse_kind(metric_s) && e.probe == probe) {
            exp = e;
            found = true;
        }
    }
    if (!found) throw argument_error("no experiment for this metric/probe combination");
    if (decades > 0) exp.r_sequence = decade_sequence(1, decades);
    const auto rows = run_limit(exp, c.config);
    std::string csv = config_meta(c.config, c.seed()) + limit_csv(exp, rows, c.config);
    const bool pass = rows.back().abs_error <= exp.final_tolerance;
    csv += std::string("# final_within_tolerance=") + (pass ? "true" : "false") + "\n";
    json jrows = json::array();
    for (const auto& row : rows)
        jrows.push_back(json{{"r", row.r},
                             {"z", row.z},
                             {"raw_F", row.raw},
                             {"normalized", row.normalized},
                             {"expected", row.expected},
                             {"abs_error", row.abs_error}});
    json jextrap;
    if (rows.size() >= 3) jextrap = extrapolate_limit(rows);
    c.out.emit(csv, json{{"experiment", exp.name},
                         {"rows", jrows},
                         {"extrapolated", jextrap},
                         {"expected", exp.expected_limit},
                         {"final_within_tolerance", pass}});
    return pass ? 0 : 4;
}

int run_quadkernel(const CommonArgs& c, const std::string& curve_s, const std::string& kind_s,
                   const std::string& degrees, int nodes, const std::string& z_s,
                   const std::string& w_s, int repro_degree) {
    const auto colon = degrees.find(':', 1);  // skip a possible leading minus
    if (colon == std::string::npos)
        throw argument_error("degrees must be lo:hi, e.g. 0:40 or -20:20");
    const int lo = std::stoi(degrees.substr(0, colon));
    const int hi = std::stoi(degrees.substr(colon + 1));
    const KernelKind kind = parse_kind(kind_s);

    NumericKernel nk;
    std::optional<KernelEvaluator> closed;
    if (kind == KernelKind::Szego) {
        nk = build_szego(curve_registry(curve_s, nodes), lo, hi, c.config);
        if (curve_s == "circle")
            closed.emplace(DomainSpec::disk(), kind, c.config);
        else if (curve_s.rfind("annulus:", 0) == 0)
            closed.emplace(DomainSpec::annulus(std::stod(curve_s.substr(8))), kind,
                           c.config);
    } else {
        DomainSpec region;
        if (curve_s == "circle")
            region = DomainSpec::disk();
        else if (curve_s.rfind("annulus:", 0) == 0)
            region = DomainSpec::annulus(std::stod(curve_s.substr(8)));
        else
            throw capability_error("area kernels exist for circle and annulus regions");
        nk = build_bergman(region, lo, hi, c.config);
        closed.emplace(region, kind, c.config);
    }

    const complexd z = parse_complex(z_s);
    const complexd w = w_s.empty() ? z : parse_complex(w_s);
    const complexd v = nk.eval(z, w);
    std::string closed_err;
    json jclosed;
    if (closed) {
        const complexd cv = closed->eval({z}, {w});
        closed_err = fmt_double(std::abs(v - cv));
        jclosed = std::abs(v - cv);
    }
    std::string repro;
    json jrepro;
    if (repro_degree != INT_MIN) {
        const double rr = reproducing_residual(
            nk,
            [repro_degree](complexd zz) { return detail::signed_pow(zz, repro_degree); },
            z);
        repro = fmt_double(rr);
        jrepro = rr;
    }

    std::string csv = config_meta(c.config, c.seed());
    csv += "# gram_residual=" + fmt_double(nk.gram_residual) +
           ", normalized_cond=" + fmt_double(nk.cond) + "\n";
    csv += "curve,kind,deg_lo,deg_hi,nodes,z,w,re,im,closed_abs_err,repro_residual\n";
    csv += csv_quote(curve_s) + "," + kind_s + "," + std::to_string(lo) + "," +
           std::to_string(hi) + "," + std::to_string(nodes) + "," +
           csv_quote(fmt_complex(z)) + "," + csv_quote(fmt_complex(w)) + "," +
           fmt_double(v.real()) + "," + fmt_double(v.imag()) + "," + closed_err + "," +
           repro + "\n";
    c.out.emit(csv, json{{"curve", curve_s},
                         {"kind", kind_s},
                         {"deg_lo", lo},
                         {"deg_hi", hi},
                         {"nodes", nodes},
                         {"z", json_complex(z)},
                         {"w", json_complex(w)},
                         {"value", json_complex(v)},
                         {"gram_residual", nk.gram_residual},
                         {"closed_abs_err", jclosed},
                         {"repro_residual", jrepro}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szego/Bergman kernel and invariant-metric laboratory"};
    app.require_subcommand(1);

    CommonArgs common;

    std::string domain = "disk", kind = "szego", z, w, xi, which = "szego";
    std::string method = "hessian";
    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate a kernel K(z,w)");
    kernel_cmd->add_option("--domain", domain)->required();
    kernel_cmd->add_option("--kind", kind)->check(CLI::IsMember({"szego", "bergman"}));
    kernel_cmd->add_option("--z", z)->required();
    kernel_cmd->add_option("--w", w, "defaults to z");
    add_common(kernel_cmd, common);

    auto* metric_cmd = app.add_subcommand("metric", "evaluate an invariant metric F(z,xi)");
    metric_cmd->add_option("--domain", domain)->required();
    metric_cmd->add_option("--which", which)
        ->check(CLI::IsMember({"szego", "bergman", "caratheodory"}));
    metric_cmd->add_option("--z", z)->required();
    metric_cmd->add_option("--xi", xi)->required();
    metric_cmd->add_option("--method", method)
        ->check(CLI::IsMember({"hessian", "variational"}));
    add_common(metric_cmd, common);

    auto* sk_cmd = app.add_subcommand("sk", "evaluate the invariant SK(z,w)");
    sk_cmd->add_option("--domain", domain)->required();
    sk_cmd->add_option("--z", z)->required();
    sk_cmd->add_option("--w", w, "defaults to z");
    add_common(sk_cmd, common);

    std::string rho = "ball";
    int ndim = 2;
    auto* fef_cmd = app.add_subcommand("fefferman", "bordered determinant and density");
    fef_cmd->add_option("--rho", rho, "defining function name");
    fef_cmd->add_option("--n", ndim, "complex dimension");
    fef_cmd->add_option("--z", z, "boundary point")->required();
    add_common(fef_cmd, common);

    std::string law = "all", family = "all";
    int draws = 100;
    auto* check_cmd = app.add_subcommand("check", "randomized transformation-law suites");
    check_cmd->add_option("--law", law)
        ->check(CLI::IsMember({"all", "szego", "bergman", "metric-szego",
                               "metric-bergman", "sk", "measure"}));
    check_cmd->add_option("--family", family)
        ->check(CLI::IsMember({"all", "disk-mobius", "disk-rotation", "annulus-rotation",
                               "annulus-inversion", "ball-automorphism"}));
    check_cmd->add_option("--draws", draws)->check(CLI::PositiveNumber);
    add_common(check_cmd, common);

    std::string metric_name = "bergman", probe = "sqrt";
    int decades = 0;
    bool ratio_mode = false;
    auto* lim_cmd = app.add_subcommand("annulus-limits", "annulus metric limit/ratio tables");
    lim_cmd->add_option("--metric", metric_name)
        ->check(CLI::IsMember({"szego", "bergman"}));
    lim_cmd->add_option("--probe", probe)->check(CLI::IsMember({"sqrt", "fifthroot"}));
    lim_cmd->add_option("--decades", decades, "override the default r-decade count");
    lim_cmd->add_flag("--ratio", ratio_mode, "emit the F_S/F_B ratio table instead");
    add_common(lim_cmd, common);

    std::string curve = "circle", degrees = "0:40";
    int nodes = 256, repro_degree = INT_MIN;
    auto* quad_cmd = app.add_subcommand("quadkernel", "quadrature-built kernels");
    quad_cmd->add_option("--curve", curve);
    quad_cmd->add_option("--kind", kind)->check(CLI::IsMember({"szego", "bergman"}));
    quad_cmd->add_option("--degrees", degrees, "lo:hi");
    quad_cmd->add_option("--nodes", nodes);
    quad_cmd->add_option("--z", z)->required();
    quad_cmd->add_option("--w", w, "defaults to z");
    quad_cmd->add_option("--repro-degree", repro_degree,
                         "also report the reproducing residual for f = z^k");
    add_common(quad_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        common.config.validate();
        if (kernel_cmd->parsed()) return run_kernel(common, domain, kind, z, w);
        if (metric_cmd->parsed()) return run_metric(common, domain, which, z, xi, method);
        if (sk_cmd->parsed()) return run_sk(common, domain, z, w);
        if (fef_cmd->parsed()) return run_fefferman(common, rho, ndim, z);
        if (check_cmd->parsed()) return run_check(common, law, family, draws);
        if (lim_cmd->parsed())
            return run_limits(common, metric_name, probe, decades, ratio_mode);
        if (quad_cmd->parsed())
            return run_quadkernel(common, curve, kind, degrees, nodes, z, w, repro_degree);
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const branch_error& e) {
        std::cerr << "branch error: " << e.what() << "\n";
        return 3;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const internal_consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }
}
