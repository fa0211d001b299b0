#include <cmath>

#include "holobraid/intertwiner.hpp"
#include "holobraid/linalg.hpp"

namespace holobraid {

namespace {

Mat power(const Mat& m, int k) {
    Mat out = eye(m.rows());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

double compare(const Mat& lhs, const Mat& rhs) {
    return (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1e-300});
}

}  // namespace

std::vector<GeneratorCheck> check_generator_action(const Intertwiner& r, double tol) {
    const RootContext& ctx = r.in1.ctx;
    const int l = ctx.ell();
    const RepMatrices a1 = build_rep(r.in1), a2 = build_rep(r.in2), b1 = build_rep(r.out1), b2 = build_rep(r.out2);
    const Mat i = eye(l);
    const Mat id = eye(static_cast<Eigen::Index>(l) * l);
    const Mat rinv = r.R.inverse();
    auto image = [&](const Mat& w) -> Mat { return r.R * w * rinv; };

    const cplx t = ctx.eps();
    const Mat x = kron(b1.K.inverse() * b1.E, b2.F * b2.L);
    const Mat k1inv = b1.K.inverse(), l1inv = b1.L.inverse(), l2inv = b2.L.inverse();

    std::vector<GeneratorCheck> out;
    auto record = [&](const std::string& formula, const std::string& variant, const Mat& lhs, const Mat& rhs) {
        const double res = compare(lhs, rhs);
        out.push_back({formula, variant, res, res < tol, false});
    };
    // inverse of (1 - k X), or nothing when ill-conditioned
    auto resolvent = [&](cplx k, Mat& dst) {
        const Mat m = id - k * x;
        if (condition_number(m) > 1e8) return false;
        dst = m.inverse();
        return true;
    };
    Mat res_t, res_tinv;
    const bool ok_t = resolvent(t, res_t);
    const bool ok_tinv = resolvent(1.0 / t, res_tinv);
    auto skip = [&](const std::string& formula, const std::string& variant) {
        out.push_back({formula, variant, 0.0, false, true});
    };

    if (ok_t) {
        record("one_tensor_k", "t", image(kron(i, a2.K)), kron(i, b2.K) * res_t);
        record("one_tensor_l", "t", image(kron(i, a2.L)), kron(i, b2.L) * res_t);
        record("k_tensor_one", "t", image(kron(a1.K, i)), (id - t * x) * kron(b1.K, i));
    } else {
        skip("one_tensor_k", "t");
        skip("one_tensor_l", "t");
        skip("k_tensor_one", "t");
    }
    record("e_tensor_one", "as_printed", image(kron(a1.E, i)), kron(b1.E, b2.L));
    record("one_tensor_f", "as_printed", image(kron(i, a2.F)), kron(k1inv, b2.F));

    // l-th powers act by scalars
    const Mat xl = kron(power(k1inv, l) * power(b1.E, l), power(b2.F, l) * power(b2.L, l));
    for (const auto& [variant, sign] : {std::pair{"minus", -1.0}, std::pair{"plus", 1.0}}) {
        const Mat inv = (id + sign * xl).inverse();
        record("one_tensor_k_power", variant, image(kron(i, power(a2.K, l))), kron(i, power(b2.K, l)) * inv);
        record("one_tensor_l_power", variant, image(kron(i, power(a2.L, l))), kron(i, power(b2.L, l)) * inv);
    }
    record("e_power_tensor_one", "as_printed", image(kron(power(a1.E, l), i)), kron(power(b1.E, l), power(b2.L, l)));
    record("one_tensor_f_power", "as_printed", image(kron(i, power(a2.F, l))), kron(power(k1inv, l), power(b2.F, l)));

    const Mat e_kl = kron(b1.E, b2.K * b2.L);
    const Mat lead_printed = kron(i, b2.E) + kron(b1.E, b2.K);
    const Mat lead_opposite = kron(b1.K, b2.E) + kron(b1.E, i);
    const Mat lhs_e = image(kron(i, a2.E));
    const Mat lhs_f = image(kron(a1.F, i));
    const Mat f_lead = kron(b1.F, l2inv) + kron(i, b2.F);
    const Mat pre_printed = kron(b1.K * l1inv, b2.F);
    const Mat pre_inverse = kron(k1inv * l1inv, b2.F);
    const std::pair<const char*, std::pair<bool, const Mat*>> resolvents[] = {{"t", {ok_t, &res_t}},
                                                                              {"t_inverse", {ok_tinv, &res_tinv}}};
    for (const auto& [tname, entry] : resolvents) {
        const auto& [ok, res] = entry;
        const std::string tn = tname;
        if (!ok) {
            for (const char* lead : {"printed_leading", "opposite_leading"}) skip("one_tensor_e", std::string(lead) + "," + tn);
            for (const char* pre : {"printed_prefactor", "inverse_prefactor"}) skip("f_tensor_one", std::string(pre) + "," + tn);
            continue;
        }
        record("one_tensor_e", "printed_leading," + tn, lhs_e, lead_printed - *res * e_kl);
        record("one_tensor_e", "opposite_leading," + tn, lhs_e, lead_opposite - *res * e_kl);
        record("f_tensor_one", "printed_prefactor," + tn, lhs_f, f_lead - pre_printed * *res);
        record("f_tensor_one", "inverse_prefactor," + tn, lhs_f, f_lead - pre_inverse * *res);
    }
    return out;
}

}  // namespace holobraid
