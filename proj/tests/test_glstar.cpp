#include <doctest.h>

#include <random>

#include "holobraid/glstar.hpp"

using namespace holobraid;

namespace {

Z0Char random_char(std::mt19937_64& rng, double radius = 0.4) {
    std::uniform_real_distribution<double> d(-radius, radius);
    auto unit = [&] { return std::exp(cplx(d(rng), d(rng))); };
    return {unit(), unit(), unit(), cplx(d(rng), d(rng))};
}

cplx T(const Z0Char& c) { return c.kappa + 1.0 / c.lambda + c.eta * c.phi; }
cplx Dt(const Z0Char& c) { return c.kappa / c.lambda; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Forward braiding with the opposite sign inside Omega.
CharPair forward_with_plus(const Z0Char& x, const Z0Char& y) {
    const cplx om = 1.0 + x.eta * y.phi * y.lambda / x.kappa;
    Z0Char p, q;
    q.kappa = y.kappa / om;
    q.lambda = y.lambda / om;
    q.phi = y.phi / x.kappa;
    p.eta = x.eta * y.lambda;
    p.kappa = x.kappa * om;
    p.lambda = x.lambda * om;
    q.eta = x.kappa * y.eta + x.eta - p.eta * q.kappa;
    p.phi = x.phi / y.lambda + y.phi - q.phi / p.lambda;
    return {p, q};
}

}  // namespace

TEST_CASE("group law") {
    const Z0Char e = Z0Char::identity();
    std::mt19937_64 rng(1);
    const Z0Char p = random_char(rng);
    CHECK(char_distance(glstar_multiply(e, p), p) < 1e-15);
    CHECK(char_distance(glstar_multiply(p, e), p) < 1e-15);

    const Z0Char r = glstar_multiply({2.0, 1.0, 1.0, 0.0}, {1.0, 1.0, 1.0, 0.0});
    CHECK(char_distance(r, {2.0, 1.0, 2.0, 0.0}) < 1e-15);

    for (int i = 0; i < 100; ++i) {
        const Z0Char a = random_char(rng), b = random_char(rng), c = random_char(rng);
        CHECK(char_distance(glstar_multiply(glstar_multiply(a, b), c), glstar_multiply(a, glstar_multiply(b, c))) < 1e-13);
    }
}

TEST_CASE("braiding fixed points") {
    const Z0Char e = Z0Char::identity();
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const Z0Char x = random_char(rng), y = random_char(rng);
        const auto [a1, a2] = beta_forward(x, e);
        CHECK(char_distance(a1, x) < 1e-12);
        CHECK(char_distance(a2, e) < 1e-12);
        const auto [b1, b2] = beta_forward(e, y);
        CHECK(char_distance(b1, e) < 1e-12);
        CHECK(char_distance(b2, y) < 1e-12);
        const auto [c1, c2] = beta_inverse(x, e);
        CHECK(char_distance(c1, x) < 1e-12);
        CHECK(char_distance(c2, e) < 1e-12);
    }
}

TEST_CASE("braiding round trip, product identity and conservation") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Z0Char x = random_char(rng), y = random_char(rng);
        const auto [p, q] = beta_forward(x, y);
        const auto [bp, bq] = beta_inverse(p, q);
        CHECK(char_distance(bp, x) < 1e-10);
        CHECK(char_distance(bq, y) < 1e-10);
        const auto [ip, iq] = beta_inverse(x, y);
        const auto [fp, fq] = beta_forward(ip, iq);
        CHECK(char_distance(fp, x) < 1e-10);
        CHECK(char_distance(fq, y) < 1e-10);

        CHECK(char_distance(glstar_multiply(p, q), glstar_multiply(y, x)) < 1e-10);

        CHECK(rel(T(p), T(x)) < 1e-10);
        CHECK(rel(T(q), T(y)) < 1e-10);
        CHECK(rel(Dt(p), Dt(x)) < 1e-10);
        CHECK(rel(Dt(q), Dt(y)) < 1e-10);
        CHECK(std::abs(conserved_quantities(ip).trace - T(x)) < 1e-10 * std::max(1.0, std::abs(T(x))));
        CHECK(std::abs(conserved_quantities(iq).det - Dt(y)) < 1e-10 * std::max(1.0, std::abs(Dt(y))));
    }
}

TEST_CASE("opposite sign in Omega breaks conservation") {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Z0Char x = random_char(rng), y = random_char(rng);
        const auto [p, q] = forward_with_plus(x, y);
        worst = std::max({worst, rel(T(p), T(x)), rel(T(q), T(y))});
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("Omega at a vanishing eta") {
    std::mt19937_64 rng(5);
    Z0Char x = random_char(rng);
    const Z0Char y = random_char(rng);
    x.eta = 0.0;
    CHECK(std::abs(braiding_omega(x, y) - 1.0) < 1e-15);
    const auto [p, q] = beta_inverse(x, y);
    CHECK(std::abs(p.kappa - x.kappa) < 1e-15);
    CHECK(std::abs(q.kappa - y.kappa) < 1e-15);
}

TEST_CASE("singular braiding is rejected") {
    const Z0Char x{1.0, 1.0, 2.0, 0.0};
    const Z0Char y{1.0, 1.0, 1.0, 0.5};
    try {
        beta_inverse(x, y);
        FAIL("expected singular braiding");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularBraiding);
    }
    CHECK_THROWS_AS(beta_forward(x, y), Error);
}

TEST_CASE("set-theoretic Yang-Baxter") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const Z0Char x = random_char(rng), y = random_char(rng), z = random_char(rng);
        // (B x 1)(1 x B)(B x 1) = (1 x B)(B x 1)(1 x B) on triples
        auto [y1, z1] = beta_inverse(y, z);
        auto [x1, z2] = beta_inverse(x, z1);
        auto [x2, y2] = beta_inverse(x1, y1);
        auto [xa, ya] = beta_inverse(x, y);
        auto [xb, za] = beta_inverse(xa, z);
        auto [yb, zb] = beta_inverse(ya, za);
        CHECK(char_distance(x2, xb) < 1e-9);
        CHECK(char_distance(y2, yb) < 1e-9);
        CHECK(char_distance(z2, zb) < 1e-9);
    }
}

TEST_CASE("GL2 refactorization") {
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const BorelPair b0 = refactor_gl2(id);
    CHECK(std::abs(b0.a - 1.0) < 1e-15);
    CHECK(std::abs(b0.b) < 1e-15);
    CHECK(std::abs(b0.c) < 1e-15);
    CHECK(std::abs(b0.d - 1.0) < 1e-15);

    Eigen::Matrix2cd m;
    m << 2.0, 1.0, 1.0, 1.0;
    const BorelPair b = refactor_gl2(m);
    CHECK(std::abs(b.a - 1.0) < 1e-15);
    CHECK(std::abs(b.b - 1.0) < 1e-15);
    CHECK(std::abs(b.c + 1.0) < 1e-15);
    CHECK(std::abs(b.d - 1.0) < 1e-15);
    CHECK((b.product() - m).norm() < 1e-14);

    Eigen::Matrix2cd sing;
    sing << 1.0, 1.0, 0.0, 0.0;
    try {
        refactor_gl2(sing);
        FAIL("expected non-factorizable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFactorizable);
    }

    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        Eigen::Matrix2cd r;
        for (int k = 0; k < 4; ++k) r(k) = cplx(g(rng), g(rng));
        CHECK((refactor_gl2(r).product() - r).norm() < 1e-12 * r.norm());
    }
}

TEST_CASE("Borel realization is a homomorphism") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const Z0Char p = random_char(rng), q = random_char(rng);
        const BorelPair bp = borel_of(p), bq = borel_of(q), bpq = borel_of(glstar_multiply(p, q));
        CHECK((bpq.plus() - bp.plus() * bq.plus()).norm() < 1e-12 * std::max(1.0, bpq.plus().norm()));
        CHECK((bpq.minus() - bp.minus() * bq.minus()).norm() < 1e-12 * std::max(1.0, bpq.minus().norm()));
        // I(pq) = p+ I(q) p-^{-1}
        const Eigen::Matrix2cd lhs = factorization_map(glstar_multiply(p, q));
        const Eigen::Matrix2cd rhs = bp.plus() * factorization_map(q) * bp.minus().inverse();
        CHECK((lhs - rhs).norm() < 1e-12 * std::max(1.0, rhs.norm()));
        CHECK(char_distance(char_of(bp), p) < 1e-14);
        const Eigen::Matrix2cd ip = factorization_map(p);
        CHECK(std::abs(ip.trace() - T(p)) < 1e-12 * std::max(1.0, std::abs(T(p))));
        CHECK(std::abs(ip.determinant() - Dt(p)) < 1e-12 * std::max(1.0, std::abs(Dt(p))));
    }
}

TEST_CASE("matrix route agrees with the character route") {
    const Z0Char e = Z0Char::identity();
    std::mt19937_64 rng(9);
    const Z0Char x0 = random_char(rng);
    const auto [s1, s2] = matrix_route_beta(x0, e, RouteVariant::RoleSwapped);
    CHECK(char_distance(s1, x0) < 1e-12);
    CHECK(char_distance(s2, e) < 1e-12);

    double swapped = 0.0, printed = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Z0Char x = random_char(rng), y = random_char(rng);
        const CharPair ref = beta_forward(x, y);
        const CharPair a = matrix_route_beta(x, y, RouteVariant::RoleSwapped);
        const CharPair b = matrix_route_beta(x, y, RouteVariant::AsPrinted);
        swapped = std::max({swapped, char_distance(a.first, ref.first), char_distance(a.second, ref.second)});
        printed = std::max({printed, char_distance(b.first, ref.first), char_distance(b.second, ref.second)});
    }
    CHECK(swapped < 1e-10);
    CHECK(printed > 1e-3);
}

TEST_CASE("conserved quantities") {
    const Conserved c = conserved_quantities(Z0Char::identity());
    CHECK(std::abs(c.trace - 2.0) < 1e-15);
    CHECK(std::abs(c.det - 1.0) < 1e-15);
    try {
        conserved_quantities({1.0, 0.0, 1.0, 0.0});
        FAIL("expected invalid input");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}
