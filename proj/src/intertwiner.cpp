#include "holobraid/intertwiner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holobraid/linalg.hpp"

namespace holobraid {

Mat coproduct_rep(const RepMatrices& r1, const RepMatrices& r2, Gen g, bool opposite) {
    const Mat i1 = eye(r1.K.rows());
    const Mat i2 = eye(r2.K.rows());
    switch (g) {
        case Gen::K: return kron(r1.K, r2.K);
        case Gen::L: return kron(r1.L, r2.L);
        case Gen::E:
            return opposite ? Mat(kron(r1.K, r2.E) + kron(r1.E, i2)) : Mat(kron(r1.E, r2.K) + kron(i1, r2.E));
        case Gen::F:
            return opposite ? Mat(kron(i1, r2.F) + kron(r1.F, r2.L.inverse()))
                            : Mat(kron(r1.F, i2) + kron(r1.L.inverse(), r2.F));
    }
    throw Error(ErrorKind::InvalidInput, "unknown generator");
}

Mat coproduct_rep(const RepParams& p1, const RepParams& p2, Gen g, bool opposite) {
    return coproduct_rep(build_rep(p1), build_rep(p2), g, opposite);
}

ParamPair braided_rep_pair(const RepParams& p1, const RepParams& p2) {
    const auto [c1, c2] = beta_inverse(z0_character(p1), z0_character(p2));
    return {lift_character(c1, p1.ctx, p1.u, p1.x), lift_character(c2, p2.ctx, p2.u, p2.x)};
}

namespace {

struct Equation {
    Mat M;  // acts on the input pair, right of R
    Mat N;  // acts on the output pair, left of R
};

std::vector<Equation> equations(const RepMatrices& a1, const RepMatrices& a2, const RepMatrices& b1,
                                const RepMatrices& b2) {
    std::vector<Equation> eqs;
    for (Gen g : {Gen::K, Gen::L, Gen::E, Gen::F}) {
        eqs.push_back({coproduct_rep(a1, a2, g, false), coproduct_rep(b1, b2, g, true)});
    }
    eqs.push_back({kron(a1.E, eye(a2.E.rows())), kron(b1.E, b2.L)});
    return eqs;
}

struct SparseEntry {
    Eigen::Index index;
    cplx value;
};

std::vector<std::vector<SparseEntry>> sparse_rows(const Mat& m) {
    std::vector<std::vector<SparseEntry>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != cplx(0.0)) rows[i].push_back({j, m(i, j)});
        }
    }
    return rows;
}

}  // namespace

NullspaceInfo intertwiner_nullspace(const RepParams& p1, const RepParams& p2, const RepParams& q1,
                                    const RepParams& q2, const SolveOptions& opts) {
    const RepMatrices a1 = build_rep(p1), a2 = build_rep(p2), b1 = build_rep(q1), b2 = build_rep(q2);
    const auto eqs = equations(a1, a2, b1, b2);
    const Eigen::Index n = a1.K.rows() * a2.K.rows();

    // the K and L equations are diagonal, so they fix the support of R exactly
    std::vector<int> column(static_cast<std::size_t>(n * n), -1);
    int unknowns = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            bool on = true;
            for (int e = 0; e < 2; ++e) {
                const cplx lhs = eqs[e].N(i, i), rhs = eqs[e].M(j, j);
                if (std::abs(lhs - rhs) > 1e-6 * std::max(std::abs(lhs), std::abs(rhs))) on = false;
            }
            if (on) column[i * n + j] = unknowns++;
        }
    }

    NullspaceInfo info;
    info.unknowns = unknowns;
    if (unknowns == 0) return info;

    std::vector<std::vector<std::pair<int, cplx>>> rows;
    for (std::size_t e = 2; e < eqs.size(); ++e) {
        const auto nrows = sparse_rows(eqs[e].N);
        const auto mcols = sparse_rows(eqs[e].M.transpose());
        const double scale = 1.0 / (eqs[e].N.norm() + eqs[e].M.norm());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                // (N R - R M)(i, j)
                std::vector<std::pair<int, cplx>> row;
                for (const auto& [k, val] : nrows[i]) {
                    const int c = column[k * n + j];
                    if (c >= 0) row.emplace_back(c, val * scale);
                }
                for (const auto& [k, val] : mcols[j]) {
                    const int c = column[i * n + k];
                    if (c >= 0) row.emplace_back(c, -val * scale);
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    info.equations = static_cast<int>(rows.size());

    Mat sys = Mat::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(rows.size()), unknowns), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, val] : rows[r]) sys(static_cast<Eigen::Index>(r), c) += val;
    }

    Eigen::HouseholderQR<Mat> qr(sys);
    const Mat tri = qr.matrixQR().topRows(unknowns).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Mat> svd(tri, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Eigen::Index last = s.size() - 1;
    const double top = s(0);
    for (Eigen::Index i = 0; i <= last; ++i) {
        if (s(i) < opts.null_rel_tol * top) ++info.kernel_dim;
    }
    for (Eigen::Index i = last; i >= std::max<Eigen::Index>(0, last - 3); --i) info.smallest.push_back(s(i) / top);
    info.gap_ratio = last > 0 ? s(last - 1) / std::max(s(last), 1e-300) : 0.0;

    const Vec v = svd.matrixV().col(last);
    info.R = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const int c = column[i * n + j];
            if (c >= 0) info.R(i, j) = v(c);
        }
    }
    return info;
}

Intertwiner solve_intertwiner_to(const RepParams& p1, const RepParams& p2, const RepParams& q1, const RepParams& q2,
                                 const SolveOptions& opts) {
    NullspaceInfo info = intertwiner_nullspace(p1, p2, q1, q2, opts);
    if (info.kernel_dim == 0) throw Error(ErrorKind::NoIntertwiner, "intertwining system has trivial kernel");
    if (info.kernel_dim > 1 || info.gap_ratio < opts.gap_ratio) {
        throw Error(ErrorKind::NonGeneric, "intertwiner kernel has dimension " + std::to_string(info.kernel_dim));
    }
    Intertwiner out{std::move(info.R), 1, 0.0, info.gap_ratio, 1.0, p1, p2, q1, q2};
    if (opts.normalize) out.scalar_gauge = det_normalize(out.R, p1.ctx.ell());
    out.residual = intertwining_residual(out.R, p1, p2, q1, q2);
    return out;
}

Intertwiner solve_intertwiner(const RepParams& p1, const RepParams& p2, const SolveOptions& opts) {
    const auto [q1, q2] = braided_rep_pair(p1, p2);
    return solve_intertwiner_to(p1, p2, q1, q2, opts);
}

double intertwining_residual(const Mat& R, const RepParams& p1, const RepParams& p2, const RepParams& q1,
                             const RepParams& q2) {
    const RepMatrices a1 = build_rep(p1), a2 = build_rep(p2), b1 = build_rep(q1), b2 = build_rep(q2);
    double worst = 0.0;
    const double rn = R.norm();
    for (Gen g : {Gen::K, Gen::L, Gen::E, Gen::F}) {
        const Mat m = coproduct_rep(a1, a2, g, false);
        const Mat nn = coproduct_rep(b1, b2, g, true);
        worst = std::max(worst, (nn * R - R * m).norm() / (rn * (m.norm() + nn.norm())));
    }
    return worst;
}

cplx det_normalize(Mat& R, int ell) {
    Eigen::PartialPivLU<Mat> lu(R);
    const Mat& f = lu.matrixLU();
    double log_mod = 0.0, arg = 0.0;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        log_mod += std::log(std::abs(f(i, i)));
        arg += std::arg(f(i, i));
    }
    if (lu.permutationP().determinant() < 0) arg += std::numbers::pi;
    arg = std::remainder(arg, 2.0 * std::numbers::pi);
    const double n2 = static_cast<double>(ell) * ell;
    cplx factor = std::exp(-cplx(log_mod, arg) / n2);

    Eigen::Index bi = 0, bj = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < R.rows(); ++i) {
        for (Eigen::Index j = 0; j < R.cols(); ++j) {
            const double a = std::abs(R(i, j));
            if (a > best * (1.0 + 1e-9)) {
                best = a;
                bi = i;
                bj = j;
            }
        }
    }
    const double step = 2.0 * std::numbers::pi / n2;
    const double theta = std::arg(R(bi, bj) * factor);
    const double wrapped = theta - step * std::floor(theta / step);
    factor *= std::polar(1.0, wrapped - theta);
    R *= factor;
    return factor;
}

double log_abs_det(const Mat& m) {
    Eigen::PartialPivLU<Mat> lu(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log(std::abs(lu.matrixLU()(i, i)));
    return acc;
}

ScalarFit compare_up_to_scalar(const Mat& r1, const Mat& r2) {
    if (r1.rows() != r2.rows() || r1.cols() != r2.cols()) throw Error(ErrorKind::InvalidInput, "shape mismatch");
    const double n2 = r2.squaredNorm();
    if (n2 == 0.0) throw Error(ErrorKind::InvalidInput, "reference matrix is zero");
    const cplx scalar = r2.conjugate().cwiseProduct(r1).sum() / n2;
    const double n1 = r1.norm();
    return {scalar, n1 == 0.0 ? 0.0 : (r1 - scalar * r2).norm() / n1};
}

double central_invariance_residual(const Intertwiner& r) {
    const RepMatrices a1 = build_rep(r.in1), a2 = build_rep(r.in2), b1 = build_rep(r.out1), b2 = build_rep(r.out2);
    const cplx e = r.in1.ctx.eps();
    auto casimir = [&](const RepMatrices& m) -> Mat { return m.E * m.F + m.K / e + m.L.inverse() * e; };
    auto weight = [](const RepMatrices& m) -> Mat { return m.K * m.L.inverse(); };
    const Mat i1 = eye(a1.K.rows());
    const Mat rinv = r.R.inverse();
    double worst = 0.0;
    const std::pair<Mat, Mat> probes[] = {
        {kron(casimir(a1), i1), kron(casimir(b1), i1)},
        {kron(i1, casimir(a2)), kron(i1, casimir(b2))},
        {kron(weight(a1), i1), kron(weight(b1), i1)},
        {kron(i1, weight(a2)), kron(i1, weight(b2))},
    };
    for (const auto& [win, wout] : probes) worst = std::max(worst, rel_diff(r.R * win * rinv, wout));
    return worst;
}

}  // namespace holobraid
