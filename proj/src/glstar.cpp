#include "holobraid/glstar.hpp"

#include <algorithm>
#include <cmath>

namespace holobraid {

namespace {

constexpr double kZeroTol = 1e-14;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

double char_distance(const Z0Char& a, const Z0Char& b) {
    return std::max({rel(a.kappa, b.kappa), rel(a.lambda, b.lambda), rel(a.eta, b.eta), rel(a.phi, b.phi)});
}

Z0Char glstar_multiply(const Z0Char& p, const Z0Char& q) {
    return {p.kappa * q.kappa, p.lambda * q.lambda, p.eta * q.kappa + q.eta, p.phi + q.phi / p.lambda};
}

cplx braiding_omega(const Z0Char& x, const Z0Char& y) { return 1.0 - x.eta * y.phi * y.lambda / x.kappa; }

CharPair beta_forward(const Z0Char& x, const Z0Char& y) {
    const cplx om = braiding_omega(x, y);
    if (std::abs(om) < kZeroTol) throw Error(ErrorKind::SingularBraiding, "Omega vanishes");
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

CharPair beta_inverse(const Z0Char& x, const Z0Char& y) {
    const cplx om = 1.0 - x.eta * y.phi;
    if (std::abs(om) < kZeroTol) throw Error(ErrorKind::SingularBraiding, "Omega' vanishes");
    Z0Char p, q;
    p.kappa = x.kappa / om;
    p.lambda = x.lambda / om;
    q.kappa = y.kappa * om;
    q.lambda = y.lambda * om;
    p.eta = x.eta / q.lambda;
    q.phi = y.phi * p.kappa;
    q.eta = (y.eta - p.eta + x.eta * y.kappa) / p.kappa;
    p.phi = q.lambda * (x.phi - q.phi + y.phi / x.lambda);
    return {p, q};
}

Eigen::Matrix2cd BorelPair::plus() const {
    Eigen::Matrix2cd m;
    m << 1.0, b, 0.0, a;
    return m;
}

Eigen::Matrix2cd BorelPair::minus() const {
    Eigen::Matrix2cd m;
    m << d, 0.0, c, 1.0;
    return m;
}

BorelPair refactor_gl2(const Eigen::Matrix2cd& m) {
    const cplx det = m.determinant();
    if (std::abs(m(1, 1)) < kZeroTol || std::abs(det) < kZeroTol) {
        throw Error(ErrorKind::NonFactorizable, "matrix has M22 = 0 or det = 0");
    }
    return {m(1, 1), m(0, 1), -m(1, 0) / det, m(1, 1) / det};
}

BorelPair borel_of(const Z0Char& p) { return {p.kappa, p.eta, -p.lambda * p.phi, p.lambda}; }

Z0Char char_of(const BorelPair& b) { return {b.a, b.d, b.b, -b.c / b.d}; }

Eigen::Matrix2cd factorization_map(const Z0Char& p) { return borel_of(p).product(); }

CharPair matrix_route_beta(const Z0Char& x, const Z0Char& y, RouteVariant variant) {
    const Z0Char& first = variant == RouteVariant::RoleSwapped ? x : y;
    const Z0Char& second = variant == RouteVariant::RoleSwapped ? y : x;
    const Z0Char& conj = variant == RouteVariant::RoleSwapped ? y : x;

    const Eigen::Matrix2cd cm = borel_of(conj).minus();
    const Eigen::Matrix2cd i1 = cm * factorization_map(first) * cm.inverse();
    const BorelPair out1 = refactor_gl2(i1);
    const Eigen::Matrix2cd op = out1.plus();
    const Eigen::Matrix2cd i2 = op.inverse() * factorization_map(second) * op;
    return {char_of(out1), char_of(refactor_gl2(i2))};
}

Conserved conserved_quantities(const Z0Char& p) {
    if (std::abs(p.lambda) < kZeroTol) throw Error(ErrorKind::InvalidInput, "lambda vanishes");
    return {p.kappa + 1.0 / p.lambda + p.eta * p.phi, p.kappa / p.lambda};
}

}  // namespace holobraid
