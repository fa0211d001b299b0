#pragma once

#include <utility>

#include <Eigen/Dense>

#include "holobraid/root_context.hpp"

namespace holobraid {

/// Values of (K^ell, L^ell, E^ell, F^ell) on a representation.
struct Z0Char {
    cplx kappa{1.0};
    cplx lambda{1.0};
    cplx eta{0.0};
    cplx phi{0.0};

    static Z0Char identity() { return {}; }
};

/// Max componentwise modulus of a - b, each term relative to max(1, |b_i|).
double char_distance(const Z0Char& a, const Z0Char& b);

using CharPair = std::pair<Z0Char, Z0Char>;

Z0Char glstar_multiply(const Z0Char& p, const Z0Char& q);

/// Omega = 1 - eta_x phi_y lambda_y / kappa_x.
cplx braiding_omega(const Z0Char& x, const Z0Char& y);

/// Character-route braiding: images of f (x) g under the automorphism evaluate as f(p) g(q).
CharPair beta_forward(const Z0Char& x, const Z0Char& y);

/// Unique (p, q) with beta_forward(p, q) = (x, y); Omega' = 1 - eta_x phi_y.
CharPair beta_inverse(const Z0Char& x, const Z0Char& y);

/// Upper/lower triangular factors b+ = [[1, b], [0, a]], b- = [[d, 0], [c, 1]].
struct BorelPair {
    cplx a, b, c, d;

    Eigen::Matrix2cd plus() const;
    Eigen::Matrix2cd minus() const;
    Eigen::Matrix2cd product() const { return plus() * minus().inverse(); }
};

BorelPair refactor_gl2(const Eigen::Matrix2cd& m);

/// Realization with a = kappa, b = eta, d = lambda, c = -lambda phi.
BorelPair borel_of(const Z0Char& p);
Z0Char char_of(const BorelPair& b);

/// I(p) = b+ b-^{-1}. borel_of is multiplicative factor by factor, so I(pq) = p+ I(q) p-^{-1}.
Eigen::Matrix2cd factorization_map(const Z0Char& p);

enum class RouteVariant { AsPrinted, RoleSwapped };

/// RoleSwapped: I(out1) = y- I(x) y-^{-1}, I(out2) = (out1)+^{-1} I(y) (out1)+.
/// AsPrinted exchanges the roles of x and y in both conjugations.
CharPair matrix_route_beta(const Z0Char& x, const Z0Char& y, RouteVariant variant);

struct Conserved {
    cplx trace;
    cplx det;
};

/// T = kappa + 1/lambda + eta phi, Dt = kappa / lambda.
Conserved conserved_quantities(const Z0Char& p);

}  // namespace holobraid
