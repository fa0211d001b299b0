#include <doctest.h>

#include "holobraid/hybe.hpp"
#include "holobraid/linalg.hpp"
#include "holobraid/report.hpp"
#include "test_util.hpp"

using namespace holobraid;
using namespace holobraid::testing;

namespace {

/// Permutation exchanging tensor slots 2 and 3 of a triple product.
Mat swap23(int l) {
    const int n = l * l * l;
    Mat p = Mat::Zero(n, n);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            for (int k = 0; k < l; ++k) p(i * l * l + k * l + j, i * l * l + j * l + k) = 1.0;
    return p;
}

Mat random_matrix(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Mat m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cplx(g(rng), g(rng));
    return m;
}

SuiteConfig config(int ell) {
    SuiteConfig cfg;
    cfg.ell = ell;
    cfg.seed = 2024;
    return cfg;
}

}  // namespace

TEST_CASE("slot embeddings") {
    std::mt19937_64 rng(1);
    for (int l : {3, 5}) {
        const Mat r = random_matrix(rng, l * l);
        const Mat I = Mat::Identity(l, l);
        CHECK(rel_diff(embed12(r, l), kron(r, I)) < 1e-15);
        CHECK(rel_diff(embed23(r, l), kron(I, r)) < 1e-15);
        const Mat p = swap23(l);
        CHECK(rel_diff(embed13(r, l), p * kron(r, I) * p) < 1e-15);
        CHECK(rel_diff(embed13(eye(l * l), l), eye(l * l * l)) < 1e-15);
    }

    // a unit in R(a b, c d) lands at (a j b, c j d) for every middle index j
    const int l = 3;
    Mat e = Mat::Zero(9, 9);
    e(1 * 3 + 2, 0 * 3 + 1) = 1.0;
    const Mat m = embed13(e, l);
    CHECK(std::abs(m.sum() - 3.0) < 1e-15);
    for (int j = 0; j < 3; ++j) CHECK(m(1 * 9 + j * 3 + 2, 0 * 9 + j * 3 + 1) == cplx(1.0));
}

TEST_CASE("trivial inputs give a unit scalar") {
    const Mat id = eye(9);
    const HybeResult h = hybe_from_matrices(id, id, id, id, id, id, 3);
    CHECK(std::abs(h.c - 1.0) < 1e-15);
    CHECK(h.residual < 1e-15);

    std::mt19937_64 rng(2);
    Mat d = Mat::Zero(9, 9);
    for (int i = 0; i < 9; ++i) d(i, i) = std::exp(cplx(0.0, 0.3 * i));
    const HybeResult hd = hybe_from_matrices(d, d, d, d, d, d, 3);
    CHECK(hd.residual < 1e-14);
    CHECK(std::abs(hd.c - 1.0) < 1e-14);
}

TEST_CASE("colorings along both bracketings") {
    for (int l : {3, 5}) {
        const SuiteConfig cfg = config(l);
        for (int i = 0; i < 10; ++i) {
            const SampledTriple t = sample_triple(cfg, i);
            const Colorings c = derive_colorings(t.x, t.y, t.z);
            CHECK(c.set_ybe_residual() < 1e-9);
            CHECK(c.x2.u == t.x.u);
            CHECK(c.y2.u == t.y.u);
            CHECK(c.z2.u == t.z.u);
            CHECK(c.xb.x == t.x.x);
        }
    }
}

TEST_CASE("holonomy Yang-Baxter with the oracle") {
    for (int l : {3, 5}) {
        const SuiteConfig cfg = config(l);
        for (int i = 0; i < 4; ++i) {
            const SampledTriple t = sample_triple(cfg, i);
            const HybeResult h = hybe_residual(t.x, t.y, t.z, Route::Oracle);
            CHECK(h.residual < 1e-7);
            CHECK(std::abs(std::abs(h.c) - 1.0) < 1e-8);

            // assemble both products independently
            const Colorings c = derive_colorings(t.x, t.y, t.z);
            auto R = [](const RepParams& a, const RepParams& b) { return solve_intertwiner(a, b).R; };
            const Mat I = Mat::Identity(l, l);
            const Mat p = swap23(l);
            const Mat lhs = kron(R(c.x1, c.y1), I) * p * kron(R(t.x, c.z1), I) * p * kron(I, R(t.y, t.z));
            const Mat rhs = kron(I, R(c.ya, c.za)) * p * kron(R(c.xa, t.z), I) * p * kron(R(t.x, t.y), I);
            const ScalarFit fit = compare_up_to_scalar(lhs, rhs);
            CHECK(fit.deviation < 1e-7);
            CHECK(std::abs(fit.scalar - h.c) < 1e-7);
        }
    }
}

TEST_CASE("closed-form route matches the oracle route") {
    const SuiteConfig cfg = config(3);
    for (int i = 0; i < 3; ++i) {
        const SampledTriple t = sample_triple(cfg, i);
        const HybeResult a = hybe_residual(t.x, t.y, t.z, Route::Oracle);
        const HybeResult b = hybe_residual(t.x, t.y, t.z, Route::ClosedForm);
        CHECK(b.residual < 1e-7);
        CHECK(std::abs(std::abs(b.c) - 1.0) < 1e-8);
        CHECK(b.residual < 10.0 * std::max(a.residual, 1e-12));
        // the normalization leaves c determined up to an ell^2-th root of unity
        const double k = std::arg(b.c / a.c) / (2 * std::numbers::pi / 9);
        CHECK(std::abs(k - std::round(k)) < 1e-6);
    }
}

TEST_CASE("constant part diagnostic is finite") {
    const SampledTriple t = sample_triple(config(3), 0);
    const double s0 = s0_diagnostic(t.x, t.y, t.z);
    CHECK(std::isfinite(s0));
    CHECK(s0 >= 0.0);
}

TEST_CASE("singular chains are rejected") {
    const RootContext ctx = primitive_root(3);
    const RepParams z{ctx, cplx(1.1, 0.1), cplx(0.9, 0.2), cplx(1.3, -0.1), cplx(1.2, 0.05)};
    const cplx phi = z0_character(z).phi;
    REQUIRE(std::abs(phi) > 1e-3);
    const RepParams y{ctx, cplx(0.95, -0.1), cplx(1.1, 0.1), cplx(0.8, 0.15), principal_root(1.0 / phi, 3)};
    const RepParams x{ctx, cplx(1.05, 0.05), cplx(0.9, -0.1), cplx(1.1, 0.2), cplx(0.9, 0.1)};
    try {
        derive_colorings(x, y, z);
        FAIL("expected rejected triple");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RejectedTriple);
    }
}
