#include <algorithm>
#include <cmath>
#include <map>

#include "holobraid/linalg.hpp"
#include "holobraid/report.hpp"
#include "holobraid/series.hpp"

namespace holobraid {

int Adjudication::passing() const {
    return static_cast<int>(std::count_if(variants.begin(), variants.end(), [](const auto& v) { return v.passed; }));
}

std::string Adjudication::chosen() const {
    if (passing() != 1) return {};
    return std::find_if(variants.begin(), variants.end(), [](const auto& v) { return v.passed; })->name;
}

const std::vector<std::string>& adjudication_ids() {
    static const std::vector<std::string> ids = {
        "deq_step_factor",      "w_tensor_reading",   "one_tensor_e_action", "f_tensor_one_action",
        "power_action_sign",    "matrix_route_variant", "gauge_u_normalization", "f_power_prefactor",
        "trace_sign",           "f_operator_order",
    };
    return ids;
}

namespace {

/// Collects per-variant worst residuals over samples.
class Tally {
public:
    Tally(std::string id, std::string question, double threshold, std::vector<std::string> names)
        : id_(std::move(id)), question_(std::move(question)), threshold_(threshold), names_(std::move(names)) {
        for (const auto& n : names_) worst_[n] = 0.0;
    }

    void add(const std::string& name, double residual) {
        auto& w = worst_.at(name);
        w = std::isfinite(residual) ? std::max(w, residual) : INFINITY;
    }
    void next_sample() { ++samples_; }

    Adjudication finish() const {
        Adjudication a{id_, question_, {}, samples_};
        for (const auto& n : names_) a.variants.push_back({n, worst_.at(n), worst_.at(n) < threshold_});
        return a;
    }

private:
    std::string id_, question_;
    double threshold_;
    std::vector<std::string> names_;
    std::map<std::string, double> worst_;
    int samples_ = 0;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double relation_residual(const Mat& K, const Mat& L, const Mat& E, const Mat& F, const RepParams& p) {
    const cplx e = p.ctx.eps();
    const Mat comm = E * F - F * E - (e - 1.0 / e) * (K - L.inverse());
    const Mat kf = K * F - F * K / (e * e);
    const Mat cas = E * F + K / e + L.inverse() * e - p.u * (p.x + 1.0 / p.x) * eye(K.rows());
    const double scale = K.norm() + L.inverse().norm() + E.norm() * F.norm();
    return std::max({comm.norm(), kf.norm(), cas.norm()}) / scale;
}

}  // namespace

std::vector<Adjudication> run_adjudications(const RootContext& ctx, std::uint64_t seed, int samples, double radius) {
    const int l = ctx.ell();
    SuiteConfig cfg;
    cfg.ell = l;
    cfg.seed = seed;
    cfg.radius = radius;

    Tally deq("deq_step_factor", "step factor of the Phi difference equation", 1e-8, {"derived", "printed"});
    Tally w2("w_tensor_reading", "shift operator in the 1 (x) A conjugation of R1", 1e-9,
             {"b_tensor_b_inverse", "b_tensor_b"});
    Tally oe("one_tensor_e_action", "image of 1 (x) E: leading terms and resolvent parameter", 1e-8,
             {"printed_leading,t", "printed_leading,t_inverse", "opposite_leading,t", "opposite_leading,t_inverse"});
    Tally fo("f_tensor_one_action", "image of F (x) 1: prefactor and resolvent parameter", 1e-8,
             {"printed_prefactor,t", "printed_prefactor,t_inverse", "inverse_prefactor,t", "inverse_prefactor,t_inverse"});
    Tally ps("power_action_sign", "sign inside the resolvent acting on l-th powers", 1e-8, {"minus", "plus"});
    Tally mr("matrix_route_variant", "roles of x and y in the factorization-map braiding", 1e-9,
             {"as_printed", "role_swapped"});
    Tally gu("gauge_u_normalization", "prefactor of the diagonal gauge U", 1e-10, {"power_prefactor", "single_prefactor"});
    Tally fp("f_power_prefactor", "scalar of F^l", 1e-9, {"with_y_power", "without_y_power"});
    Tally ts("trace_sign", "sign of x^{-l} in the conserved trace", 1e-10, {"plus", "minus"});
    Tally fo2("f_operator_order", "F from the entrywise action or the operator product", 1e-10,
              {"entrywise", "operator_product"});

    const Series phi = phi_series(ctx, 80);
    for (int i = 0; i < samples; ++i) {
        const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(i), 11);
        const RepParams& p1 = sp.p1;
        const RepParams& p2 = sp.p2;

        // spectral orbit against the series, |s| <= 0.3
        CounterRng rng(seed, static_cast<std::uint64_t>(i), 12);
        const cplx s = std::polar(0.3 * std::sqrt(rng.uniform(0.01, 1.0)), rng.uniform(-M_PI, M_PI));
        const cplx z0 = s * ctx.eps_pow(-2);
        for (const auto& [name, variant] : {std::pair{"derived", DeqVariant::Derived}, std::pair{"printed", DeqVariant::Printed}}) {
            const auto orbit = phi_orbit(ctx, s, variant);
            double worst = 0.0;
            for (int k = 0; k < l; ++k) {
                const cplx zk = s * ctx.eps_pow(2L * k - 2);
                worst = std::max(worst, rel(orbit[k] / orbit[0], phi.evaluate(zk) / phi.evaluate(z0)));
            }
            deq.add(name, worst);
        }
        deq.next_sample();

        const auto [q1, q2] = braided_rep_pair(p1, p2);
        const ClosedFormParts parts = closed_form_parts(p1, p2, q1, q2);
        const Mat one_a = kron(eye(l), clock_shift(ctx).A);
        const Mat lhs = parts.R1 * one_a * parts.R1.inverse();
        const Mat id = eye(static_cast<Eigen::Index>(l) * l);
        for (const auto& [name, inv] : {std::pair{"b_tensor_b_inverse", true}, std::pair{"b_tensor_b", false}}) {
            const Mat rhs = parts.chi.t * one_a * (id - parts.chi.s * shift_pair(ctx, inv)).inverse();
            w2.add(name, rel_diff(lhs, rhs));
        }
        w2.next_sample();

        const Intertwiner r = solve_intertwiner(p1, p2);
        std::map<std::string, double> power_worst{{"minus", 0.0}, {"plus", 0.0}};
        for (const auto& chk : check_generator_action(r)) {
            const double res = chk.skipped ? INFINITY : chk.residual;
            if (chk.formula == "one_tensor_e") oe.add(chk.variant, res);
            if (chk.formula == "f_tensor_one") fo.add(chk.variant, res);
            if (chk.formula == "one_tensor_k_power" || chk.formula == "one_tensor_l_power") {
                power_worst[chk.variant] = std::max(power_worst[chk.variant], res);
            }
        }
        for (const auto& [name, res] : power_worst) ps.add(name, res);
        oe.next_sample();
        fo.next_sample();
        ps.next_sample();

        const Z0Char cx = z0_character(p1), cy = z0_character(p2);
        const CharPair fwd = beta_forward(cx, cy), inv = beta_inverse(cx, cy);
        for (const auto& [name, variant] : {std::pair{"as_printed", RouteVariant::AsPrinted},
                                            std::pair{"role_swapped", RouteVariant::RoleSwapped}}) {
            double res = INFINITY;
            try {
                const CharPair m = matrix_route_beta(cx, cy, variant);
                const double df = std::max(char_distance(m.first, fwd.first), char_distance(m.second, fwd.second));
                const double di = std::max(char_distance(m.first, inv.first), char_distance(m.second, inv.second));
                res = std::min(df, di);
            } catch (const Error&) {
            }
            mr.add(name, res);
        }
        mr.next_sample();

        for (const RepParams* p : {&p1, &p2}) {
            const GaugeU g = gauge_U(*p);
            gu.add("power_prefactor", gauge_conjugation_residual(*p, g, g.z));
            gu.add("single_prefactor", gauge_conjugation_residual(*p, gauge_U_single_prefactor(*p), 1.0));
            gu.next_sample();

            const RepMatrices m = build_rep(*p);
            Mat fl = eye(l);
            for (int k = 0; k < l; ++k) fl = fl * m.F;
            fp.add("with_y_power", rel(z0_character(*p).phi, fl(0, 0)));
            fp.add("without_y_power", rel(f_power_without_y(*p), fl(0, 0)));
            fp.next_sample();

            const cplx ul = std::pow(p->u, l), xl = std::pow(p->x, l);
            const cplx trace = conserved_quantities(z0_character(*p)).trace;
            ts.add("plus", rel(ul * (xl + 1.0 / xl), trace));
            ts.add("minus", rel(ul * (xl - 1.0 / xl), trace));
            ts.next_sample();

            fo2.add("entrywise", relation_residual(m.K, m.L, m.E, m.F, *p));
            fo2.add("operator_product", relation_residual(m.K, m.L, m.E, f_operator_product(*p), *p));
            fo2.next_sample();
        }
    }
    return {deq.finish(), w2.finish(), oe.finish(), fo.finish(), ps.finish(),
            mr.finish(),  gu.finish(), fp.finish(), ts.finish(), fo2.finish()};
}

DetProbeReport run_det_probe(const RootContext& ctx, std::uint64_t seed, int samples, double radius) {
    SuiteConfig cfg;
    cfg.ell = ctx.ell();
    cfg.seed = seed;
    cfg.radius = radius;
    std::vector<DetSample> analytic, unit;
    for (int i = 0; i < samples; ++i) {
        const SampledPair sp = sample_pair(cfg, static_cast<std::uint64_t>(i), 13);
        analytic.push_back(det_sample(sp.p1, sp.p2, PhiBase::Analytic, GaugeScale::Unimodular));
        unit.push_back(det_sample(sp.p1, sp.p2, PhiBase::One, GaugeScale::Unit));
    }
    return {det_exponent_probe(ctx.ell(), analytic), det_exponent_probe(ctx.ell(), unit)};
}

}  // namespace holobraid
