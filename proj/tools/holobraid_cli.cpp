#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "holobraid/matrix_io.hpp"
#include "holobraid/report.hpp"
#include "holobraid/series.hpp"

using namespace holobraid;

namespace {

struct Common {
    int ell = 3;
    std::uint64_t seed = 42;
    std::uint64_t index = 0;
    double radius = 0.3;
    std::string route = "oracle";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--ell", c.ell, "odd degree of the root of unity");
    cmd->add_option("--seed", c.seed, "sampling seed");
    cmd->add_option("--index", c.index, "trial index fed to the sampler");
    cmd->add_option("--radius", c.radius, "half-width of the sampling box in log space");
}

SuiteConfig config_of(const Common& c) {
    SuiteConfig cfg;
    cfg.ell = c.ell;
    cfg.seed = c.seed;
    cfg.radius = c.radius;
    cfg.validate();
    return cfg;
}

int run_suite_cmd(SuiteConfig cfg, const std::string& route) {
    cfg.route = parse_route(route);
    const SuiteResult res = run_suite(cfg);
    const json& s = res.report["summary"];
    std::cout << "ell=" << cfg.ell << " trials=" << s["trials"] << " passed=" << s["passed"]
              << " rejections=" << s["rejections"] << " adjudications=" << s["adjudications_resolved"] << "/"
              << s["adjudications_total"] << '\n';
    for (const auto& [name, entry] : s["checks"].items()) {
        std::cout << "  " << name << " max=" << entry["max_residual_str"].get<std::string>() << " failures=" << entry["failures"]
                  << '\n';
    }
    if (res.report.contains("det_probe")) {
        const json& d = res.report["det_probe"]["analytic_unimodular"];
        std::cout << "  det exponent " << d["alpha"] << " (fit residual " << d["fit_residual_str"].get<std::string>()
                  << ", matches " << d["matched"].get<std::string>() << ")\n";
    }
    std::cout << (res.ok ? "OK" : "FAILED") << '\n';
    return res.ok ? 0 : 1;
}

int braid_map_cmd(const Common& c) {
    const SampledPair sp = sample_pair(config_of(c), c.index);
    const Z0Char cx = z0_character(sp.p1), cy = z0_character(sp.p2);
    const auto [f1, f2] = beta_forward(cx, cy);
    const auto [i1, i2] = beta_inverse(cx, cy);
    const auto [q1, q2] = braided_rep_pair(sp.p1, sp.p2);
    json out = {{"inputs", json::array({to_json(sp.p1), to_json(sp.p2)})},
                {"characters", json::array({to_json(cx), to_json(cy)})},
                {"beta_forward", json::array({to_json(f1), to_json(f2)})},
                {"beta_inverse", json::array({to_json(i1), to_json(i2)})},
                {"colorings", json::array({to_json(q1), to_json(q2)})}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int rmatrix_cmd(const Common& c, const std::string& out_path) {
    const SampledPair sp = sample_pair(config_of(c), c.index);
    const Intertwiner r = parse_route(c.route) == RouteChoice::ClosedForm ? closed_form_R(sp.p1, sp.p2)
                                                                          : solve_intertwiner(sp.p1, sp.p2);
    json out = {{"route", c.route},
                {"inputs", json::array({to_json(r.in1), to_json(r.in2)})},
                {"outputs", json::array({to_json(r.out1), to_json(r.out2)})},
                {"kernel_dim", r.kernel_dim},
                {"residual", r.residual},
                {"residual_str", residual_string(r.residual)},
                {"scalar_gauge", to_json(r.scalar_gauge)}};
    std::cout << out.dump(2) << '\n';
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw Error(ErrorKind::Io, "cannot open " + out_path);
        write_matrix_tsv(os, intertwiner_header(c.ell, r.residual, r.kernel_dim), r.R);
    }
    return 0;
}

int hybe_cmd(const Common& c) {
    const SampledTriple st = sample_triple(config_of(c), c.index);
    const Route route = parse_route(c.route) == RouteChoice::ClosedForm ? Route::ClosedForm : Route::Oracle;
    const HybeResult h = hybe_residual(st.x, st.y, st.z, route);
    json out = {{"route", c.route},
                {"colorings", json::array({to_json(st.x), to_json(st.y), to_json(st.z)})},
                {"set_residual", h.set_residual},
                {"residual", h.residual},
                {"residual_str", residual_string(h.residual)},
                {"c", to_json(h.c)},
                {"c_modulus", std::abs(h.c)},
                {"c_arg", std::arg(h.c)},
                {"s0_diagnostic", s0_diagnostic(st.x, st.y, st.z)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int series_cmd(double qre, double qim, int order, int ell) {
    const cplx q(qre, qim);
    const Series sum = series_f(q, order);
    const Series prod = series_f_product(q, order);
    double gap = 0.0;
    for (int n = 0; n <= order; ++n) gap = std::max(gap, std::abs(sum[n] - prod[n]) / std::max(1.0, std::abs(sum[n])));
    json shift = json::object();
    for (int n = 1; n <= 12; ++n) shift[std::to_string(n)] = q_shift_coefficient_check(n, q);
    const RootContext ctx = primitive_root(ell);
    json out = {{"q", to_json(q)},
                {"order", order},
                {"functional_residual", check_f_functional(q, order)},
                {"sum_vs_product", gap},
                {"q_shift_residuals", shift},
                {"phi_orbit_closure_at_0.3", phi_orbit_closure(ctx, cplx(0.3, 0.1))},
                {"pairing_2_1", to_json(pairing_monomial(2, 1, 2, 1, q))}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holonomy R-matrix verification at odd roots of unity"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string suite_route = "both";
    auto* suite = app.add_subcommand("suite", "run the randomized verification suite");
    suite->add_option("--ell", cfg.ell, "odd degree of the root of unity");
    suite->add_option("--trials", cfg.trials, "number of pair trials");
    suite->add_option("--seed", cfg.seed, "sampling seed");
    suite->add_option("--tol", cfg.tol, "intertwining residual tolerance");
    suite->add_option("--radius", cfg.radius, "half-width of the sampling box in log space");
    suite->add_option("--route", suite_route, "oracle, closed-form or both");
    suite->add_option("--report", cfg.report_path, "JSON report path");
    suite->add_option("--dump-dir", cfg.dump_dir, "directory for TSV matrix dumps");
    suite->add_option("--hybe-every", cfg.hybe_every, "run a triple check every N trials (0 disables)");

    Common bm, rm, hy;
    auto* braid = app.add_subcommand("braid-map", "colorings of one sampled pair");
    add_common(braid, bm);
    auto* rmat = app.add_subcommand("rmatrix", "intertwiner of one sampled pair");
    add_common(rmat, rm);
    std::string rm_out;
    rmat->add_option("--route", rm.route, "oracle or closed-form");
    rmat->add_option("--out", rm_out, "TSV dump path");
    auto* hybe = app.add_subcommand("hybe", "holonomy Yang-Baxter check for one sampled triple");
    add_common(hybe, hy);
    hybe->add_option("--route", hy.route, "oracle or closed-form");

    double qre = 0.5, qim = 0.0;
    int order = 30, series_ell = 3;
    auto* ser = app.add_subcommand("series", "q-series and pairing identities");
    ser->add_option("--q-re", qre, "real part of q");
    ser->add_option("--q-im", qim, "imaginary part of q");
    ser->add_option("--order", order, "truncation order");
    ser->add_option("--ell", series_ell, "degree for the Phi orbit check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*suite) return run_suite_cmd(cfg, suite_route);
        if (*braid) return braid_map_cmd(bm);
        if (*rmat) return rmatrix_cmd(rm, rm_out);
        if (*hybe) return hybe_cmd(hy);
        if (*ser) return series_cmd(qre, qim, order, series_ell);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.kind() == ErrorKind::InvalidDegree || e.kind() == ErrorKind::InvalidInput;
        return usage ? 2 : 1;
    }
    return 0;
}
