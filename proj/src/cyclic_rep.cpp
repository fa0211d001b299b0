#include "holobraid/cyclic_rep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holobraid/linalg.hpp"

namespace holobraid {

namespace {

bool usable(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) > 0.0; }

double min_modulus(const std::vector<cplx>& c) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& z : c) m = std::min(m, std::abs(z));
    return m;
}

Mat diag(const std::vector<cplx>& d) {
    Mat m = Mat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return m;
}

}  // namespace

void RepParams::validate() const {
    if (!usable(u) || !usable(v) || !usable(x) || !usable(y)) {
        throw Error(ErrorKind::InvalidParams, "representation parameters must be finite and nonzero");
    }
}

ClockShift clock_shift(const RootContext& ctx) {
    const int ell = ctx.ell();
    Mat a = Mat::Zero(ell, ell);
    Mat b = Mat::Zero(ell, ell);
    for (int n = 1; n <= ell; ++n) {
        a(n - 1, n - 1) = ctx.eps_pow(2L * n);
        b(n % ell, n - 1) = 1.0;
    }
    return {a, b};
}

std::vector<cplx> f_weights(const RepParams& p) {
    const int ell = p.ctx.ell();
    std::vector<cplx> c(ell);
    for (int m = 1; m <= ell; ++m) {
        c[m - 1] = (p.x / p.v * p.ctx.eps_pow(1L - 2 * m) - 1.0) * (p.v * p.ctx.eps_pow(2L * m - 1) - 1.0 / p.x);
    }
    return c;
}

RepMatrices build_rep(const RepParams& p) {
    p.validate();
    const int ell = p.ctx.ell();
    const auto [a, b] = clock_shift(p.ctx);
    const auto c = f_weights(p);
    Mat f = Mat::Zero(ell, ell);
    for (int m = 1; m <= ell; ++m) {
        const int target = (m - 2 + ell) % ell;
        f(target, m - 1) = p.u / p.y * c[m - 1];
    }
    return {p.u * p.v * a, p.v / p.u * a, p.y * b, f, p};
}

Mat f_operator_product(const RepParams& p) {
    p.validate();
    const auto [a, b] = clock_shift(p.ctx);
    return (p.u / p.y) * diag(f_weights(p)) * b.adjoint();
}

Z0Char z0_character(const RepParams& p) {
    p.validate();
    const int l = p.ctx.ell();
    const cplx ul = std::pow(p.u, l), vl = std::pow(p.v, l), xl = std::pow(p.x, l), yl = std::pow(p.y, l);
    return {ul * vl, vl / ul, yl, ul / yl * (xl + 1.0 / xl - vl - 1.0 / vl)};
}

cplx f_power_without_y(const RepParams& p) {
    const int l = p.ctx.ell();
    const cplx ul = std::pow(p.u, l), vl = std::pow(p.v, l), xl = std::pow(p.x, l);
    return ul * (xl / vl - 1.0) * (vl - 1.0 / xl);
}

RepParams lift_character(const Z0Char& c, const RootContext& ctx, cplx u, cplx x) {
    if (std::abs(c.eta) < 1e-14) throw Error(ErrorKind::DegenerateCharacter, "eta = 0 has no cyclic lift");
    if (std::abs(c.kappa) < 1e-14) throw Error(ErrorKind::DegenerateCharacter, "kappa = 0");
    const int l = ctx.ell();
    const cplx ul = std::pow(u, l);
    RepParams p{ctx, u, principal_root(c.kappa / ul, l), x, principal_root(c.eta, l)};
    p.validate();

    const Z0Char back = z0_character(p);
    const double lam_err = std::abs(back.lambda - c.lambda) / std::abs(c.lambda);
    const cplx vl = std::pow(p.v, l), xl = std::pow(x, l);
    const double phi_scale =
        std::max(std::abs(c.phi), std::abs(ul / c.eta) * (std::abs(xl) + std::abs(1.0 / xl) + std::abs(vl) + std::abs(1.0 / vl)));
    const double phi_err = std::abs(back.phi - c.phi) / phi_scale;
    if (lam_err > 1e-9 || phi_err > 1e-9) {
        throw Error(ErrorKind::InconsistentLift, "character does not match the strand data (u, x)");
    }
    return p;
}

GaugeU gauge_U(const RepParams& p) {
    const auto c = f_weights(p);
    if (min_modulus(c) < 1e-12) throw Error(ErrorKind::NonGeneric, "some c_m vanishes");
    cplx prod = 1.0;
    for (const auto& cm : c) prod *= cm;
    const cplx z = principal_root(prod, p.ctx.ell());
    Vec d(p.ctx.ell());
    cplx acc = 1.0;
    for (int n = 0; n < p.ctx.ell(); ++n) {
        acc *= z / c[n];
        d(n) = acc;
    }
    return {d, z};
}

GaugeU gauge_U_single_prefactor(const RepParams& p) {
    const auto c = f_weights(p);
    if (min_modulus(c) < 1e-12) throw Error(ErrorKind::NonGeneric, "some c_m vanishes");
    const int l = p.ctx.ell();
    const cplx vl = std::pow(p.v, l), xl = std::pow(p.x, l);
    const cplx z = principal_root((xl / vl - 1.0) * (vl - xl), l);
    Vec d(l);
    cplx acc = z;
    for (int n = 0; n < l; ++n) {
        acc /= c[n];
        d(n) = acc;
    }
    return {d, z};
}

double gauge_conjugation_residual(const RepParams& p, const GaugeU& g, cplx target) {
    const auto [a, b] = clock_shift(p.ctx);
    const Mat binv = b.adjoint();
    const Mat fhat = binv * diag(f_weights(p));
    const Mat conj = g.diag.cwiseInverse().asDiagonal() * fhat * g.diag.asDiagonal();
    const Mat want = target * binv;
    return (conj - want).norm() / std::max(conj.norm(), want.norm());
}

Mat projector(const RootContext& ctx, int n) {
    if (n < 1 || n > ctx.ell()) throw Error(ErrorKind::InvalidInput, "projector index out of range");
    Mat m = Mat::Zero(ctx.ell(), ctx.ell());
    m(n - 1, n - 1) = 1.0;
    return m;
}

bool is_generic(const RepParams& p, const RepParams& q, const GenericityThresholds& th) {
    try {
        p.validate();
        q.validate();
        if (p.ctx.ell() != q.ctx.ell()) return false;
        const int l = p.ctx.ell();
        if (min_modulus(f_weights(p)) < th.min_modulus || min_modulus(f_weights(q)) < th.min_modulus) return false;

        const Z0Char cp = z0_character(p);
        const Z0Char cq = z0_character(q);
        if (std::abs(cp.eta) < th.min_modulus || std::abs(cq.eta) < th.min_modulus) return false;
        // t^ell = Omega' = 1 - s^ell, so this also keeps s^ell away from 1
        if (std::abs(1.0 - cp.eta * cq.phi) < th.min_modulus) return false;

        const auto [o1, o2] = beta_inverse(cp, cq);
        if (std::abs(o1.eta) < th.min_modulus || std::abs(o2.eta) < th.min_modulus) return false;
        const RepParams r1 = lift_character(o1, p.ctx, p.u, p.x);
        const RepParams r2 = lift_character(o2, q.ctx, q.u, q.x);
        if (min_modulus(f_weights(r1)) < th.min_modulus || min_modulus(f_weights(r2)) < th.min_modulus) return false;

        const RepMatrices m1 = build_rep(r1);
        const RepMatrices m2 = build_rep(r2);
        const Mat xop = kron(m1.K.inverse() * m1.E, m2.F * m2.L);
        const Mat id = eye(static_cast<Eigen::Index>(l) * l);
        for (const cplx t : {p.ctx.eps(), std::conj(p.ctx.eps())}) {
            if (condition_number(id - t * xop) > th.max_condition) return false;
        }
        return true;
    } catch (const Error&) {
        return false;
    }
}

int commutant_dimension(const RepMatrices& r, double rel_tol) {
    const Eigen::Index l = r.K.rows();
    const Mat id = eye(l);
    Mat sys(4 * l * l, l * l);
    Eigen::Index row = 0;
    for (const Mat* g : {&r.K, &r.L, &r.E, &r.F}) {
        // row-major vec: (G X - X G) -> (G (x) I - I (x) G^T) vec(X)
        sys.middleRows(row, l * l) = kron(*g, id) - kron(id, g->transpose());
        row += l * l;
    }
    Eigen::JacobiSVD<Mat> svd(sys);
    const auto& s = svd.singularValues();
    int dim = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) < rel_tol * s(0)) ++dim;
    }
    return dim;
}

double RelationResiduals::max() const { return std::max({relations, centrality, casimir, center}); }

RelationResiduals relation_residuals(const RepParams& p) {
    const RepMatrices r = build_rep(p);
    const int l = p.ctx.ell();
    const cplx e = p.ctx.eps();
    const Mat id = eye(l);
    const Mat linv = r.L.inverse();
    auto rel = [](const Mat& d, double scale) { return d.norm() / scale; };

    RelationResiduals out;
    const double nk = r.K.norm(), nl = r.L.norm(), ne = r.E.norm(), nf = r.F.norm(), nli = linv.norm();
    out.relations = std::max({rel(r.K * r.L - r.L * r.K, nk * nl), rel(r.K * r.E - e * e * r.E * r.K, nk * ne),
                              rel(r.K * r.F - r.F * r.K / (e * e), nk * nf), rel(r.L * r.E - e * e * r.E * r.L, nl * ne),
                              rel(r.L * r.F - r.F * r.L / (e * e), nl * nf),
                              rel(r.E * r.F - r.F * r.E - (e - 1.0 / e) * (r.K - linv),
                                  ne * nf + std::abs(e - 1.0 / e) * (nk + nli))});

    const Z0Char c = z0_character(p);
    const std::pair<const Mat*, cplx> powers[] = {{&r.K, c.kappa}, {&r.L, c.lambda}, {&r.E, c.eta}, {&r.F, c.phi}};
    for (const auto& [g, scalar] : powers) {
        Mat pw = id;
        for (int k = 0; k < l; ++k) pw = pw * *g;
        const double scale = std::pow(g->norm(), l);
        out.centrality = std::max({out.centrality, rel(pw - pw.trace() / static_cast<double>(l) * id, scale),
                                   rel(pw - scalar * id, scale)});
    }

    const cplx cas = p.u * (p.x + 1.0 / p.x);
    out.casimir = rel(r.E * r.F + r.K / e + linv * e - cas * id, ne * nf + nk + nli);

    Mat prod = id;
    double scale = 1.0;
    for (int j = 0; j < l; ++j) {
        const Mat factor = cas * id - r.K * p.ctx.eps_pow(j + 1) - linv * p.ctx.eps_pow(-j - 1);
        prod = prod * factor;
        scale *= factor.norm();
    }
    Mat el = id, fl = id;
    for (int k = 0; k < l; ++k) {
        el = el * r.E;
        fl = fl * r.F;
    }
    out.center = rel(prod - el * fl, std::max(scale, (el * fl).norm()));
    return out;
}

}  // namespace holobraid
