#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include "holobraid/matrix_io.hpp"
#include "holobraid/report.hpp"

namespace holobraid {

namespace {

constexpr double kRelationTol = 1e-9;
constexpr double kBraidTol = 1e-10;
constexpr double kFixedPointTol = 1e-12;
constexpr double kHybeTol = 1e-7;
constexpr double kUnitModulusTol = 1e-8;

double proportionality_tol(int ell) { return ell <= 5 ? 1e-8 : 1e-6; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double slotwise_conservation(const Z0Char& in1, const Z0Char& in2, const CharPair& out, bool det) {
    auto pick = [det](const Z0Char& c) {
        const Conserved q = conserved_quantities(c);
        return det ? q.det : q.trace;
    };
    return std::max(rel(pick(out.first), pick(in1)), rel(pick(out.second), pick(in2)));
}

void dump(const std::string& dir, const std::string& name, const std::string& header, const Mat& m) {
    std::filesystem::create_directories(dir);
    std::ofstream os(std::filesystem::path(dir) / name);
    if (!os) throw Error(ErrorKind::Io, "cannot write " + name + " in " + dir);
    write_matrix_tsv(os, header, m);
}

}  // namespace

bool TrialReport::passed() const {
    return !error && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::string residual_string(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Z0Char& c) {
    return {{"kappa", to_json(c.kappa)}, {"lambda", to_json(c.lambda)}, {"eta", to_json(c.eta)}, {"phi", to_json(c.phi)}};
}

json to_json(const RepParams& p) {
    return {{"ell", p.ctx.ell()}, {"u", to_json(p.u)}, {"v", to_json(p.v)}, {"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

json to_json(const Adjudication& a) {
    json variants = json::array();
    for (const auto& v : a.variants) {
        variants.push_back({{"variant", v.name},
                            {"residual", v.residual},
                            {"residual_str", residual_string(v.residual)},
                            {"passed", v.passed}});
    }
    return {{"question", a.question}, {"samples", a.samples}, {"chosen", a.chosen()}, {"passing", a.passing()},
            {"variants", variants}};
}

json to_json(const DetProbe& d) {
    json cands = json::object();
    for (const auto& [name, value] : d.candidates) cands[name] = value;
    return {{"conclusive", d.conclusive}, {"alpha", d.alpha},         {"intercept", d.intercept},
            {"fit_residual", d.fit_residual}, {"fit_residual_str", residual_string(d.fit_residual)},
            {"candidates", cands},            {"matched", d.matched}};
}

TrialReport run_trial(const SuiteConfig& cfg, int trial_index) {
    TrialReport rep;
    rep.trial_index = trial_index;
    auto check = [&rep](const std::string& name, const std::string& variant, double residual, double tol) {
        rep.checks.push_back({name, variant, residual, residual < tol});
    };
    try {
        const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(trial_index));
        const RepParams& p1 = sp.p1;
        const RepParams& p2 = sp.p2;
        rep.rejections = sp.rejections;
        rep.params = {p1, p2};
        const int ell = cfg.ell;

        const RelationResiduals r1 = relation_residuals(p1), r2 = relation_residuals(p2);
        check("relations", "", std::max(r1.relations, r2.relations), kRelationTol);
        check("centrality", "", std::max(r1.centrality, r2.centrality), kRelationTol);
        check("casimir", "", std::max(r1.casimir, r2.casimir), kRelationTol);
        check("center_relation", "", std::max(r1.center, r2.center), kRelationTol);

        const Z0Char cx = z0_character(p1), cy = z0_character(p2);
        const CharPair fwd = beta_forward(cx, cy);
        const CharPair inv = beta_inverse(cx, cy);
        const CharPair back = beta_forward(inv.first, inv.second);
        check("beta_round_trip", "", std::max(char_distance(back.first, cx), char_distance(back.second, cy)), kBraidTol);
        check("product_identity", "",
              char_distance(glstar_multiply(fwd.first, fwd.second), glstar_multiply(cy, cx)), kBraidTol);
        const double dt = std::max(slotwise_conservation(cx, cy, fwd, false), slotwise_conservation(cx, cy, inv, false));
        const double dd = std::max(slotwise_conservation(cx, cy, fwd, true), slotwise_conservation(cx, cy, inv, true));
        check("conserved_trace", "slotwise", dt, kBraidTol);
        check("conserved_det", "slotwise", dd, kBraidTol);
        rep.conserved_deltas = {{"trace", dt}, {"det", dd}};
        const Z0Char e = Z0Char::identity();
        const CharPair fx = beta_forward(cx, e), fy = beta_forward(e, cy);
        check("fixed_points", "",
              std::max({char_distance(fx.first, cx), char_distance(fx.second, e), char_distance(fy.first, e),
                        char_distance(fy.second, cy)}),
              kFixedPointTol);

        const auto [q1, q2] = braided_rep_pair(p1, p2);
        check("lift_consistency", "",
              std::max(char_distance(z0_character(q1), inv.first), char_distance(z0_character(q2), inv.second)), kBraidTol);
        const ChiData chi = chi_data(p1, p2, q1, q2);
        check("t_power", "", std::abs(std::pow(chi.t, ell) - (1.0 - std::pow(chi.s, ell))), 1e-11);
        rep.extra["chi"] = {{"chi1", to_json(chi.chi1)}, {"chi2", to_json(chi.chi2)}, {"a", chi.a_exp},
                            {"s", to_json(chi.s)},       {"t", to_json(chi.t)},
                            {"mismatch", std::max({chi.chi1_mismatch, chi.chi2_mismatch, chi.a_mismatch})}};

        std::optional<Intertwiner> oracle, closed;
        if (cfg.route != RouteChoice::ClosedForm) {
            oracle = solve_intertwiner(p1, p2);
            check("oracle_kernel_dim", "", oracle->kernel_dim == 1 ? 0.0 : 1.0, 0.5);
            check("oracle_residual", "", oracle->residual, cfg.tol);
            check("central_invariance", "oracle", central_invariance_residual(*oracle), cfg.tol);
            const NullspaceInfo neg = intertwiner_nullspace(p1, p2, p1, p2);
            check("negative_control", "unbraided", neg.kernel_dim == 0 ? 0.0 : 1.0, 0.5);
        }
        if (cfg.route != RouteChoice::Oracle) {
            closed = closed_form_R(p1, p2);
            check("closed_form_residual", "", closed->residual, cfg.tol);
        }
        if (oracle && closed) {
            const ScalarFit fit = compare_up_to_scalar(oracle->R, closed->R);
            check("oracle_vs_closed_form", "", fit.deviation, proportionality_tol(ell));
            rep.extra["comparison"] = {{"scalar", to_json(fit.scalar)}, {"deviation", fit.deviation}};
        }

        const Intertwiner& r = oracle ? *oracle : *closed;
        std::map<std::string, double> best;
        for (const auto& g : check_generator_action(r)) {
            auto [it, fresh] = best.try_emplace(g.formula, INFINITY);
            if (!g.skipped) it->second = std::min(it->second, g.residual);
        }
        for (const auto& [formula, res] : best) check("generator_action", formula, res, 1e-8);

        if (!cfg.dump_dir.empty()) {
            const std::string tag = "trial" + std::to_string(trial_index);
            const RepMatrices m1 = build_rep(p1);
            dump(cfg.dump_dir, tag + "_K1.tsv", rep_header(p1, 'K'), m1.K);
            dump(cfg.dump_dir, tag + "_F1.tsv", rep_header(p1, 'F'), m1.F);
            dump(cfg.dump_dir, tag + "_R.tsv", intertwiner_header(ell, r.residual, r.kernel_dim), r.R);
        }

        if (cfg.hybe_every > 0 && trial_index % cfg.hybe_every == 0) {
            const SampledTriple st = sample_triple(cfg, static_cast<std::uint64_t>(trial_index));
            const Route route = cfg.route == RouteChoice::ClosedForm ? Route::ClosedForm : Route::Oracle;
            const HybeResult h = hybe_residual(st.x, st.y, st.z, route);
            check("set_ybe", "", h.set_residual, 1e-9);
            check("hybe_residual", "", h.residual, kHybeTol);
            check("hybe_unit_scalar", "", std::abs(std::abs(h.c) - 1.0), kUnitModulusTol);
            rep.extra["hybe"] = {{"route", route == Route::Oracle ? "oracle" : "closed-form"},
                                 {"colorings", json::array({to_json(st.x), to_json(st.y), to_json(st.z)})},
                                 {"c_modulus", std::abs(h.c)},
                                 {"c_arg", std::arg(h.c)},
                                 {"residual", h.residual},
                                 {"s0_diagnostic", s0_diagnostic(st.x, st.y, st.z)},
                                 {"rejections", st.rejections}};
        }
    } catch (const Error& e) {
        rep.error = e.what();
    }
    return rep;
}

json emit_report(const SuiteConfig& cfg, const std::vector<TrialReport>& trials,
                 const std::vector<Adjudication>& adjudications, const std::optional<DetProbeReport>& det) {
    json out;
    out["config"] = {{"ell", cfg.ell},      {"trials", cfg.trials}, {"seed", cfg.seed},
                     {"tol", cfg.tol},      {"radius", cfg.radius}, {"route", to_string(cfg.route)},
                     {"hybe_every", cfg.hybe_every}};

    int passed = 0, rejections = 0;
    std::map<std::string, std::pair<double, int>> per_check;
    json args = json::array();
    json trial_list = json::array();
    for (const auto& t : trials) {
        if (t.passed()) ++passed;
        rejections += t.rejections;
        json checks = json::array();
        for (const auto& c : t.checks) {
            auto& [worst, fails] = per_check[c.name];
            worst = std::max(worst, c.residual);
            if (!c.pass) ++fails;
            checks.push_back({{"name", c.name},
                              {"variant", c.variant},
                              {"residual", c.residual},
                              {"residual_str", residual_string(c.residual)},
                              {"pass", c.pass}});
        }
        json params = json::array();
        for (const auto& p : t.params) params.push_back(to_json(p));
        json deltas = json::object();
        for (const auto& [k, v] : t.conserved_deltas) deltas[k] = v;
        if (t.extra.contains("hybe")) args.push_back(t.extra["hybe"]["c_arg"]);
        json entry = {{"trial_index", t.trial_index}, {"passed", t.passed()}, {"rejections", t.rejections},
                      {"params", params},             {"checks", checks},     {"conserved_deltas", deltas}};
        if (t.error) entry["error"] = *t.error;
        for (const auto& [k, v] : t.extra.items()) entry[k] = v;
        trial_list.push_back(std::move(entry));
    }

    json check_summary = json::object();
    for (const auto& [name, wf] : per_check) {
        check_summary[name] = {{"max_residual", wf.first}, {"max_residual_str", residual_string(wf.first)},
                               {"failures", wf.second}};
    }
    int resolved = 0;
    json adj = json::object();
    for (const auto& a : adjudications) {
        if (a.passing() == 1) ++resolved;
        adj[a.id] = to_json(a);
    }
    out["summary"] = {{"trials", static_cast<int>(trials.size())},
                      {"passed", passed},
                      {"failed", static_cast<int>(trials.size()) - passed},
                      {"rejections", rejections},
                      {"checks", check_summary},
                      {"hybe_c_args", args},
                      {"adjudications_resolved", resolved},
                      {"adjudications_total", static_cast<int>(adjudications.size())}};
    out["trials"] = trial_list;
    out["adjudications"] = adj;
    if (det) out["det_probe"] = {{"analytic_unimodular", to_json(det->analytic)}, {"unit_base_power_gauge", to_json(det->unit_gauge)}};
    return out;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<TrialReport> trials(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, [&](int i) { trials[static_cast<std::size_t>(i)] = run_trial(cfg, i); });

    const RootContext ctx = primitive_root(cfg.ell);
    const auto adjudications = run_adjudications(ctx, cfg.seed, 6, cfg.radius);
    const DetProbeReport det = run_det_probe(ctx, cfg.seed, 20, cfg.radius);

    SuiteResult res;
    res.report = emit_report(cfg, trials, adjudications, det);
    const bool trials_ok = std::all_of(trials.begin(), trials.end(), [](const TrialReport& t) { return t.passed(); });
    const bool adj_ok = std::all_of(adjudications.begin(), adjudications.end(), [](const Adjudication& a) { return a.passing() == 1; });
    const bool det_ok = det.analytic.conclusive && det.analytic.fit_residual < 1e-6;
    res.ok = trials_ok && adj_ok && det_ok;

    if (!cfg.report_path.empty()) {
        std::ofstream os(cfg.report_path);
        if (!os) throw Error(ErrorKind::Io, "cannot open report file " + cfg.report_path);
        os << res.report.dump(2) << '\n';
        if (!os) throw Error(ErrorKind::Io, "write failed for " + cfg.report_path);
    }
    return res;
}

}  // namespace holobraid
