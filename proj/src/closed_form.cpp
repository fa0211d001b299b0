#include <algorithm>
#include <cmath>

#include "holobraid/intertwiner.hpp"
#include "holobraid/linalg.hpp"
#include "holobraid/series.hpp"

namespace holobraid {

namespace {

struct Snap {
    int k;
    double mismatch;
};

Snap snap(const RootContext& ctx, cplx raw, const char* what, double tol) {
    const auto [k, dist] = ctx.nearest_even_power(raw);
    if (dist > tol) {
        throw Error(ErrorKind::BranchMismatch, std::string(what) + " is not an ell-th root of unity (distance " +
                                                   std::to_string(dist) + ")");
    }
    return {k, dist};
}

Vec unimodular(const Vec& d, int ell) {
    cplx det = 1.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) det *= d(i);
    return d / principal_root(det, ell);
}

}  // namespace

ChiData chi_data(const RepParams& p1, const RepParams& p2, const RepParams& q1, const RepParams& q2, double tol) {
    const RootContext& ctx = p1.ctx;
    ChiData out;
    out.z2 = gauge_U(p2).z;
    out.z2_tilde = gauge_U(q2).z;

    const cplx raw1 = p1.y * p2.u / (q1.y * q2.v);
    const cplx raw2 = out.z2 * q2.y * p1.u * q1.v / (p2.y * out.z2_tilde);
    const cplx rawa = q1.v * q2.v / (p1.v * p2.v);
    const Snap s1 = snap(ctx, raw1, "chi1", tol);
    const Snap s2 = snap(ctx, raw2, "chi2", tol);
    const Snap sa = snap(ctx, rawa, "eps^{-2a}", tol);

    out.chi1 = ctx.eps_pow(2L * s1.k);
    out.chi2 = ctx.eps_pow(2L * s2.k);
    out.a_exp = (ctx.ell() - sa.k) % ctx.ell();
    out.chi1_mismatch = s1.mismatch;
    out.chi2_mismatch = s2.mismatch;
    out.a_mismatch = sa.mismatch;
    out.s = ctx.eps() * out.chi1 * out.chi2 * q1.y * q2.v * out.z2_tilde / (p1.u * q1.v * q2.y);
    out.t = q2.v / p2.v;
    return out;
}

Mat shift_pair(const RootContext& ctx, bool inverse_second) {
    const Mat b = clock_shift(ctx).B;
    return kron(b, inverse_second ? Mat(b.adjoint()) : b);
}

Mat function_of_w(const RootContext& ctx, const std::vector<cplx>& values) {
    const int l = ctx.ell();
    if (static_cast<int>(values.size()) != l) throw Error(ErrorKind::InvalidInput, "need one value per eigenvalue of W");
    const Eigen::Index n = static_cast<Eigen::Index>(l) * l;
    Mat out = Mat::Zero(n, n);
    for (int j = 0; j < l; ++j) {
        cplx w = 0.0;
        for (int k = 0; k < l; ++k) w += values[k] * ctx.eps_pow(-2L * k * j);
        w /= static_cast<double>(l);
        // W^j maps v_a (x) v_b to v_{a+j} (x) v_{b-j}
        for (int a = 0; a < l; ++a) {
            for (int b = 0; b < l; ++b) {
                out(((a + j) % l) * l + (b - j + l) % l, a * l + b) += w;
            }
        }
    }
    return out;
}

ClosedFormParts closed_form_parts(const RepParams& p1, const RepParams& p2, const RepParams& q1, const RepParams& q2,
                                  PhiBase base, GaugeScale gauge) {
    const RootContext& ctx = p1.ctx;
    const int l = ctx.ell();
    const Eigen::Index n = static_cast<Eigen::Index>(l) * l;
    ClosedFormParts parts;
    parts.chi = chi_data(p1, p2, q1, q2);
    const ChiData& chi = parts.chi;

    parts.D = Mat::Zero(n, n);
    for (int a = 1; a <= l; ++a) {
        for (int b = 1; b <= l; ++b) {
            parts.D((a - 1) * l + (b - 1), (a - 1) * l + (b - 1)) =
                ctx.eps_pow(2L * a * b) * std::pow(chi.chi1, -a) * std::pow(chi.chi2, b);
        }
    }

    Vec uin = gauge_U(p2).diag;
    Vec uout = gauge_U(q2).diag;
    if (gauge == GaugeScale::Unimodular) {
        uin = unimodular(uin, l);
        uout = unimodular(uout, l);
    }
    Mat ba = eye(l);
    const Mat b = clock_shift(ctx).B;
    for (int k = 0; k < chi.a_exp; ++k) ba = b * ba;
    parts.BaU = kron(ba, Mat(uout.asDiagonal()));

    parts.orbit = phi_orbit(ctx, chi.s, DeqVariant::Derived, chi.t);
    if (base == PhiBase::Analytic) {
        const cplx phi0 = phi_value(ctx, chi.s * ctx.eps_pow(-2));
        for (auto& v : parts.orbit) v *= phi0;
    }
    parts.R1 = function_of_w(ctx, parts.orbit);
    parts.UinInv = kron(eye(l), Mat(uin.cwiseInverse().asDiagonal()));
    return parts;
}

Intertwiner closed_form_R(const RepParams& p1, const RepParams& p2) {
    const auto [q1, q2] = braided_rep_pair(p1, p2);
    const ClosedFormParts parts = closed_form_parts(p1, p2, q1, q2);
    Intertwiner out{parts.D * parts.BaU * parts.R1 * parts.UinInv, 1, 0.0, 0.0, 1.0, p1, p2, q1, q2};
    out.scalar_gauge = det_normalize(out.R, p1.ctx.ell());
    out.residual = intertwining_residual(out.R, p1, p2, q1, q2);
    return out;
}

DetSample det_sample(const RepParams& p1, const RepParams& p2, PhiBase base, GaugeScale gauge) {
    const auto [q1, q2] = braided_rep_pair(p1, p2);
    const ClosedFormParts parts = closed_form_parts(p1, p2, q1, q2, base, gauge);
    return {parts.chi.s, log_abs_det(parts.D * parts.BaU * parts.R1 * parts.UinInv)};
}

DetProbe det_exponent_probe(int ell, const std::vector<DetSample>& samples) {
    DetProbe out;
    const double l = ell;
    out.candidates = {{"l(l+2)/2", l * (l + 2) / 2},
                      {"-l(l+2)/2", -l * (l + 2) / 2},
                      {"l(l+1)/2", l * (l + 1) / 2},
                      {"-l(l+1)/2", -l * (l + 1) / 2}};
    if (samples.size() < 10) return out;

    std::vector<double> xs, ys;
    for (const auto& s : samples) {
        xs.push_back(std::log(std::abs(1.0 - std::pow(s.s, ell))));
        ys.push_back(s.log_abs_det);
    }
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    if (*mx - *mn < 1e-6) return out;

    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    out.alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.intercept = (sy - out.alpha * sx) / m;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.fit_residual = std::max(out.fit_residual, std::abs(ys[i] - out.alpha * xs[i] - out.intercept));
    }
    out.conclusive = true;
    out.matched = "none";
    for (const auto& [name, value] : out.candidates) {
        if (std::abs(out.alpha - value) < 1e-6) out.matched = name;
    }
    return out;
}

}  // namespace holobraid
