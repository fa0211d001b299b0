#include <cstdio>
#include <map>
#include <numbers>
#include <string>

#include "holobraid/linalg.hpp"
#include "holobraid/report.hpp"
#include "holobraid/series.hpp"
#include "test_util.hpp"

using namespace holobraid;
using namespace holobraid::testing;

namespace {

constexpr std::uint64_t kSeed = 20240601;

constexpr double kRelationTol = 1e-9;
constexpr double kBraidTol = 1e-10;
constexpr double kSetYbeTol = 1e-9;
constexpr double kFixedPointTol = 1e-12;
constexpr double kOracleTol = 1e-9;
constexpr double kKernelFraction = 0.99;
constexpr double kClosedFormTol = 1e-8;
constexpr double kClosedFormTol7 = 1e-6;
constexpr double kHybeTol = 1e-7;
constexpr double kUnitModulusTol = 1e-8;
constexpr double kSeriesTol = 1e-12;
constexpr double kOrbitSeriesTol = 1e-8;
constexpr double kDetFitTol = 1e-6;

constexpr int kRepSamples = 100;
constexpr int kBraidPairs = 500;
constexpr int kBraidTriples = 100;
constexpr int kOraclePairs = 100;
constexpr int kClosedFormMinPairs = 50;
constexpr int kHybeTriples = 20;
constexpr int kSeriesOrder = 30;

SuiteConfig config(int ell) {
    SuiteConfig cfg;
    cfg.ell = ell;
    cfg.seed = kSeed;
    return cfg;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct Line {
    bool ok = true;
    std::string detail;

    void require(bool cond) { ok = ok && cond; }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

/// Center relation and Casimir recomputed from entrywise generators.
double center_oracle(const RepParams& p) {
    const PlainRep r = plain_rep(p);
    const int l = p.ctx.ell();
    const cplx e = std::polar(1.0, 2 * std::numbers::pi / l);
    const Mat I = Mat::Identity(l, l);
    const Mat Li = r.L.inverse();
    const cplx c = p.u * (p.x + 1.0 / p.x);
    Mat prod = I;
    double scale = 1.0;
    for (int j = 0; j < l; ++j) {
        const Mat f = c * I - r.K * std::pow(e, j + 1) - Li * std::pow(e, -j - 1);
        prod = prod * f;
        scale *= f.norm();
    }
    const Mat ef = mpow(r.E, l) * mpow(r.F, l);
    const double center = (prod - ef).norm() / std::max(scale, ef.norm());
    const Mat cas = r.E * r.F + r.K / e + Li * e;
    const double casimir = (cas - c * I).norm() / (r.E.norm() * r.F.norm() + r.K.norm() + Li.norm());
    return std::max(center, casimir);
}

double centrality_oracle(const RepParams& p) {
    const PlainRep r = plain_rep(p);
    const int l = p.ctx.ell();
    const Z0Char c = z0_character(p);
    const Mat I = Mat::Identity(l, l);
    double w = 0.0;
    const std::pair<const Mat*, cplx> gens[] = {{&r.K, c.kappa}, {&r.L, c.lambda}, {&r.E, c.eta}, {&r.F, c.phi}};
    for (const auto& [g, s] : gens) {
        const Mat pw = mpow(*g, l);
        w = std::max(w, (pw - s * I).norm() / std::pow(g->norm(), l));
    }
    return w;
}

Line criterion1() {
    Line out;
    for (int l : {3, 5, 7}) {
        const SuiteConfig cfg = config(l);
        double worst = 0.0;
        for (int i = 0; i < kRepSamples; ++i) {
            const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(i), 11);
            const PlainRep r = plain_rep(sp.p1);
            worst = std::max({worst, relation_oracle(r.K, r.L, r.E, r.F, sp.p1.ctx.eps()), center_oracle(sp.p1),
                              centrality_oracle(sp.p1), relation_residuals(sp.p1).max()});
        }
        out.require(worst < kRelationTol);
        out.note("l=" + std::to_string(l) + " max " + fmt("%.2e", worst));
    }
    return out;
}

Line criterion2() {
    Line out;
    const Z0Char e = Z0Char::identity();
    for (int l : {3, 5, 7}) {
        const SuiteConfig cfg = config(l);
        double braid = 0.0, fixed = 0.0, ybe = 0.0;
        for (int i = 0; i < kBraidPairs; ++i) {
            const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(i), 12);
            const Z0Char x = z0_character(sp.p1), y = z0_character(sp.p2);
            const auto [p, q] = beta_forward(x, y);
            const auto [bp, bq] = beta_inverse(p, q);
            const auto [ip, iq] = beta_inverse(x, y);
            const auto [fp, fq] = beta_forward(ip, iq);
            const Conserved tx = conserved_quantities(x), ty = conserved_quantities(y);
            braid = std::max({braid, char_distance(bp, x), char_distance(bq, y), char_distance(fp, x), char_distance(fq, y),
                              char_distance(glstar_multiply(p, q), glstar_multiply(y, x)),
                              char_distance(glstar_multiply(iq, ip), glstar_multiply(x, y))});
            for (const auto& [a, b] : {std::pair{p, q}, std::pair{ip, iq}}) {
                const cplx ta = a.kappa + 1.0 / a.lambda + a.eta * a.phi, tb = b.kappa + 1.0 / b.lambda + b.eta * b.phi;
                braid = std::max({braid, rel(ta, tx.trace), rel(tb, ty.trace), rel(a.kappa / a.lambda, tx.det),
                                  rel(b.kappa / b.lambda, ty.det)});
            }
            const auto [a1, a2] = beta_forward(x, e);
            const auto [b1, b2] = beta_forward(e, y);
            const auto [c1, c2] = beta_inverse(x, e);
            const auto [d1, d2] = beta_inverse(e, y);
            fixed = std::max({fixed, char_distance(a1, x), char_distance(a2, e), char_distance(b1, e), char_distance(b2, y),
                              char_distance(c1, x), char_distance(c2, e), char_distance(d1, e), char_distance(d2, y)});
        }
        for (int i = 0; i < kBraidTriples; ++i) {
            const SampledTriple t = sample_triple(cfg, static_cast<std::uint64_t>(i), 13);
            const Z0Char x = z0_character(t.x), y = z0_character(t.y), z = z0_character(t.z);
            const auto [y1, z1] = beta_inverse(y, z);
            const auto [x1, z2] = beta_inverse(x, z1);
            const auto [x2, y2] = beta_inverse(x1, y1);
            const auto [xa, ya] = beta_inverse(x, y);
            const auto [xb, za] = beta_inverse(xa, z);
            const auto [yb, zb] = beta_inverse(ya, za);
            ybe = std::max({ybe, char_distance(x2, xb), char_distance(y2, yb), char_distance(z2, zb),
                            derive_colorings(t.x, t.y, t.z).set_ybe_residual()});
        }
        out.require(braid < kBraidTol && ybe < kSetYbeTol && fixed < kFixedPointTol);
        out.note("l=" + std::to_string(l) + " braid " + fmt("%.2e", braid) + " set-ybe " + fmt("%.2e", ybe) + " fixed " +
                 fmt("%.2e", fixed));
    }
    return out;
}

struct OracleRun {
    Line c3, c4;
};

double plain_residual(const Mat& R, const RepParams& p1, const RepParams& p2, const RepParams& q1, const RepParams& q2) {
    const PlainRep a1 = plain_rep(p1), a2 = plain_rep(p2), b1 = plain_rep(q1), b2 = plain_rep(q2);
    const Eigen::Index l = a1.K.rows();
    const Mat I = Mat::Identity(l, l);
    const std::pair<Mat, Mat> eqs[] = {
        {kron(b1.K, b2.K), kron(a1.K, a2.K)},
        {kron(b1.L, b2.L), kron(a1.L, a2.L)},
        {kron(b1.K, b2.E) + kron(b1.E, I), kron(a1.E, a2.K) + kron(I, a2.E)},
        {kron(I, b2.F) + kron(b1.F, b2.L.inverse()), kron(a1.F, I) + kron(a1.L.inverse(), a2.F)},
    };
    double w = 0.0;
    for (const auto& [N, M] : eqs) w = std::max(w, (N * R - R * M).norm() / (R.norm() * (N.norm() + M.norm())));
    return w;
}

OracleRun criteria3and4() {
    OracleRun out;
    for (int l : {3, 5, 7}) {
        const SuiteConfig cfg = config(l);
        int dim_one = 0, negative_ok = 0, compared = 0;
        double residual = 0.0, central = 0.0, deviation = 0.0;
        for (int i = 0; i < kOraclePairs; ++i) {
            const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(i), 14);
            const auto [q1, q2] = braided_rep_pair(sp.p1, sp.p2);
            const NullspaceInfo info = intertwiner_nullspace(sp.p1, sp.p2, q1, q2);
            if (info.kernel_dim == 1 && info.gap_ratio >= SolveOptions{}.gap_ratio) {
                ++dim_one;
                const Intertwiner r = solve_intertwiner(sp.p1, sp.p2);
                residual = std::max({residual, r.residual, plain_residual(r.R, sp.p1, sp.p2, q1, q2)});
                central = std::max(central, central_invariance_residual(r));
                const Intertwiner cf = closed_form_R(sp.p1, sp.p2);
                deviation = std::max(deviation, compare_up_to_scalar(cf.R, r.R).deviation);
                ++compared;
            }
            if (intertwiner_nullspace(sp.p1, sp.p2, sp.p1, sp.p2).kernel_dim == 0) ++negative_ok;
        }
        const double frac = static_cast<double>(dim_one) / kOraclePairs;
        out.c3.require(frac >= kKernelFraction && residual < kOracleTol && central < kOracleTol && negative_ok == kOraclePairs);
        out.c3.note("l=" + std::to_string(l) + " dim1 " + std::to_string(dim_one) + "/" + std::to_string(kOraclePairs) +
                    " res " + fmt("%.2e", residual) + " central " + fmt("%.2e", central) + " negative " +
                    std::to_string(negative_ok) + "/" + std::to_string(kOraclePairs));
        const double tol = l == 7 ? kClosedFormTol7 : kClosedFormTol;
        out.c4.require(compared >= kClosedFormMinPairs && deviation < tol);
        out.c4.note("l=" + std::to_string(l) + " pairs " + std::to_string(compared) + " max dev " + fmt("%.2e", deviation));
    }
    return out;
}

Line criterion5() {
    Line out;
    for (int l : {3, 5}) {
        const SuiteConfig cfg = config(l);
        double residual = 0.0, modulus = 0.0;
        std::map<long, int> arg_hist;
        for (int i = 0; i < kHybeTriples; ++i) {
            const SampledTriple t = sample_triple(cfg, static_cast<std::uint64_t>(i), 15);
            const HybeResult h = hybe_residual(t.x, t.y, t.z, Route::Oracle);
            residual = std::max(residual, h.residual);
            modulus = std::max(modulus, std::abs(std::abs(h.c) - 1.0));
            arg_hist[std::lround(std::arg(h.c) / (2 * std::numbers::pi / (l * l)))]++;
        }
        out.require(residual < kHybeTol && modulus < kUnitModulusTol);
        std::string hist;
        for (const auto& [k, n] : arg_hist) hist += (hist.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(n);
        out.note("l=" + std::to_string(l) + " res " + fmt("%.2e", residual) + " ||c|-1| " + fmt("%.2e", modulus) +
                 " arg(c) in units of 2pi/l^2 {" + hist + "}");
    }
    return out;
}

Line criterion6() {
    Line out;
    double functional = 0.0, sum_product = 0.0, closure = 0.0, orbit = 0.0, shift = 0.0, pairing = 0.0;
    for (const cplx q : {cplx(0.3), cplx(0.5), cplx(-0.4, 0.3), cplx(0.2, -0.6), cplx(0.7, 0.1)}) {
        functional = std::max(functional, check_f_functional(q, kSeriesOrder));
        const Series a = series_f(q, kSeriesOrder), b = series_f_product(q, kSeriesOrder);
        for (int n = 0; n <= kSeriesOrder; ++n)
            sum_product = std::max(sum_product, std::abs(a[n] - b[n]) / std::max(1.0, std::abs(a[n])));
        for (int n = 1; n <= 12; ++n) shift = std::max(shift, q_shift_coefficient_check(n, q));
        for (int n = 0; n <= 6; ++n)
            for (int m = 0; m <= 6; ++m) {
                double fact = 1.0;
                for (int k = 2; k <= n; ++k) fact *= k;
                pairing = std::max(pairing, rel(pairing_monomial(n, m, n, m, q), fact * q_factorial_b(m, q)));
                pairing = std::max(pairing, std::abs(pairing_monomial(n, m, n + 1, m, q)));
            }
    }
    CounterRng rng(kSeed, 0, 16);
    for (int l : {3, 5, 7}) {
        const RootContext ctx = primitive_root(l);
        const Series phi = phi_series(ctx, 80);
        for (int i = 0; i < 50; ++i) {
            const cplx s = std::polar(rng.uniform(0.01, 0.3), rng.uniform(-std::numbers::pi, std::numbers::pi));
            closure = std::max(closure, phi_orbit_closure(ctx, s));
            const auto o = phi_orbit(ctx, s);
            const cplx base = phi.evaluate(s * ctx.eps_pow(-2));
            for (int k = 0; k < l; ++k)
                orbit = std::max(orbit, std::abs(o[k] - phi.evaluate(s * ctx.eps_pow(2L * k - 2)) / base));
        }
    }
    out.require(functional < kSeriesTol && sum_product < kSeriesTol && closure < kSeriesTol && orbit < kOrbitSeriesTol &&
                shift < kSeriesTol && pairing < kSeriesTol);
    out.note("functional " + fmt("%.2e", functional) + " sum/product " + fmt("%.2e", sum_product) + " closure " +
             fmt("%.2e", closure) + " orbit/series " + fmt("%.2e", orbit) + " q-shift " + fmt("%.2e", shift) +
             " pairing " + fmt("%.2e", pairing));
    return out;
}

Line criterion7() {
    Line out;
    for (int l : {3, 5, 7}) {
        const RootContext ctx = primitive_root(l);
        const auto adj = run_adjudications(ctx, kSeed, 6);
        int resolved = 0;
        std::string chosen;
        for (const auto& a : adj) {
            if (a.passing() == 1) ++resolved;
            if (l == 3) chosen += (chosen.empty() ? "" : " ") + a.id + "=" + a.chosen();
        }
        out.require(resolved == static_cast<int>(adj.size()) && !adj.empty());
        out.note("l=" + std::to_string(l) + " resolved " + std::to_string(resolved) + "/" + std::to_string(adj.size()));
        if (l == 3) out.note(chosen);

        const DetProbeReport a = run_det_probe(ctx, kSeed, 20);
        const DetProbeReport b = run_det_probe(ctx, kSeed + 1, 20);
        const bool stable = a.analytic.conclusive && b.analytic.conclusive && a.analytic.fit_residual < kDetFitTol &&
                            b.analytic.fit_residual < kDetFitTol && std::abs(a.analytic.alpha - b.analytic.alpha) < kDetFitTol;
        out.require(stable);
        std::string cands;
        for (const auto& [name, v] : a.analytic.candidates) cands += " " + name + "=" + fmt("%g", v);
        out.note("l=" + std::to_string(l) + " det alpha " + fmt("%.6f", a.analytic.alpha) + " fit " +
                 fmt("%.1e", a.analytic.fit_residual) + " matches " + a.analytic.matched + " (candidates" + cands + ")");
    }
    return out;
}

void print(int id, const char* name, const Line& line) {
    std::printf("%s criterion %d (%s): %s\n", line.ok ? "PASS" : "FAIL", id, name, line.detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    bool ok = true;
    auto run = [&ok](int id, const char* name, const Line& line) {
        print(id, name, line);
        ok = ok && line.ok;
    };
    try {
        run(1, "representation suite", criterion1());
        run(2, "braiding map", criterion2());
        const OracleRun o = criteria3and4();
        run(3, "oracle intertwiner", o.c3);
        run(4, "closed form vs oracle", o.c4);
        run(5, "holonomy Yang-Baxter", criterion5());
        run(6, "series identities", criterion6());
        run(7, "adjudication completeness", criterion7());
    } catch (const std::exception& e) {
        std::printf("FAIL aborted: %s\n", e.what());
        return 1;
    }
    return ok ? 0 : 1;
}
