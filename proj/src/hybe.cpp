#include "holobraid/hybe.hpp"

#include <algorithm>
#include <cmath>

#include "holobraid/linalg.hpp"

namespace holobraid {

namespace {

ParamPair bcol(const RepParams& a, const RepParams& b, const char* step) {
    try {
        return braided_rep_pair(a, b);
    } catch (const Error& e) {
        throw Error(ErrorKind::RejectedTriple, std::string(step) + ": " + e.what());
    }
}

bool same(const RepParams& a, const RepParams& b) { return a.u == b.u && a.v == b.v && a.x == b.x && a.y == b.y; }

}  // namespace

Colorings derive_colorings(const RepParams& x, const RepParams& y, const RepParams& z) {
    Colorings c{x, y, z, x, x, x, x, x, x, x, x, x, x, x, x};
    std::tie(c.y1, c.z1) = bcol(y, z, "lhs step 1");
    std::tie(c.x1, c.z2) = bcol(x, c.z1, "lhs step 2");
    std::tie(c.x2, c.y2) = bcol(c.x1, c.y1, "lhs step 3");
    std::tie(c.xa, c.ya) = bcol(x, y, "rhs step 1");
    std::tie(c.xb, c.za) = bcol(c.xa, z, "rhs step 2");
    std::tie(c.yb, c.zb) = bcol(c.ya, c.za, "rhs step 3");
    return c;
}

double Colorings::set_ybe_residual() const {
    return std::max({char_distance(z0_character(x2), z0_character(xb)), char_distance(z0_character(y2), z0_character(yb)),
                     char_distance(z0_character(z2), z0_character(zb))});
}

Mat embed12(const Mat& r, int ell) { return kron(r, eye(ell)); }

Mat embed23(const Mat& r, int ell) { return kron(eye(ell), r); }

Mat embed13(const Mat& r, int ell) {
    const Eigen::Index l = ell;
    Mat out = Mat::Zero(l * l * l, l * l * l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index k = 0; k < l; ++k)
            for (Eigen::Index i2 = 0; i2 < l; ++i2)
                for (Eigen::Index k2 = 0; k2 < l; ++k2) {
                    const cplx v = r(i * l + k, i2 * l + k2);
                    if (v == cplx(0.0)) continue;
                    for (Eigen::Index j = 0; j < l; ++j) out(i * l * l + j * l + k, i2 * l * l + j * l + k2) = v;
                }
    return out;
}

HybeResult hybe_from_matrices(const Mat& r12_l, const Mat& r13_l, const Mat& r23_l, const Mat& r23_r, const Mat& r13_r,
                              const Mat& r12_r, int ell) {
    const Mat lhs = embed12(r12_l, ell) * embed13(r13_l, ell) * embed23(r23_l, ell);
    const Mat rhs = embed23(r23_r, ell) * embed13(r13_r, ell) * embed12(r12_r, ell);
    const ScalarFit fit = compare_up_to_scalar(lhs, rhs);
    Eigen::Index bi = 0, bj = 0;
    rhs.cwiseAbs().maxCoeff(&bi, &bj);
    return {fit.scalar, fit.deviation, std::abs(lhs(bi, bj) / rhs(bi, bj) - fit.scalar), 0.0};
}

HybeResult hybe_residual(const RepParams& x, const RepParams& y, const RepParams& z, Route route) {
    const Colorings c = derive_colorings(x, y, z);
    auto build = [route](const RepParams& a, const RepParams& b) {
        return route == Route::Oracle ? solve_intertwiner(a, b) : closed_form_R(a, b);
    };
    const Intertwiner r23 = build(y, z), r13 = build(x, c.z1), r12 = build(c.x1, c.y1);
    const Intertwiner s12 = build(x, y), s13 = build(c.xa, z), s23 = build(c.ya, c.za);

    const bool chained = same(r23.out1, r12.in2) && same(r23.out2, r13.in2) && same(r13.out1, r12.in1) &&
                         same(s12.out1, s13.in1) && same(s12.out2, s23.in1) && same(s13.out2, s23.in2);
    if (!chained) throw Error(ErrorKind::Assembly, "colorings do not chain");

    HybeResult out = hybe_from_matrices(r12.R, r13.R, r23.R, s23.R, s13.R, s12.R, x.ctx.ell());
    out.set_residual = c.set_ybe_residual();
    return out;
}

double s0_diagnostic(const RepParams& x, const RepParams& y, const RepParams& z) {
    const Colorings c = derive_colorings(x, y, z);
    auto r0 = [](const RepParams& a, const RepParams& b) {
        const auto [q1, q2] = braided_rep_pair(a, b);
        const ClosedFormParts p = closed_form_parts(a, b, q1, q2);
        Mat m = p.D * p.BaU * p.UinInv;
        det_normalize(m, a.ctx.ell());
        return m;
    };
    return hybe_from_matrices(r0(c.x1, c.y1), r0(x, c.z1), r0(y, z), r0(c.ya, c.za), r0(c.xa, z), r0(x, y), x.ctx.ell())
        .residual;
}

}  // namespace holobraid
