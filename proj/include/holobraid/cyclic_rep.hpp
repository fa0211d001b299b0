#pragma once

#include <vector>

#include <Eigen/Dense>

#include "holobraid/glstar.hpp"
#include "holobraid/root_context.hpp"

namespace holobraid {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Parameters (u, v, x, y) of a cyclic irreducible representation of level ell.
struct RepParams {
    RootContext ctx;
    cplx u, v, x, y;

    /// Throws Error(InvalidParams) when a parameter vanishes or is not finite.
    void validate() const;
};

/// Generators on the basis v_1 .. v_ell (stored at indices 0 .. ell-1).
struct RepMatrices {
    Mat K, L, E, F;
    RepParams params;
};

struct ClockShift {
    Mat A, B;
};

/// A v_n = eps^{2n} v_n, B v_n = v_{n+1} cyclically.
ClockShift clock_shift(const RootContext& ctx);

/// c_m = (x v^{-1} eps^{-2m+1} - 1)(v eps^{2m-1} - x^{-1}) for m = 1 .. ell.
std::vector<cplx> f_weights(const RepParams& p);

/// K = uvA, L = u^{-1}vA, E = yB, F v_m = y^{-1} u c_m v_{m-1}.
RepMatrices build_rep(const RepParams& p);

/// The diagonal-times-B^{-1} operator product for F, kept for comparison with build_rep.
Mat f_operator_product(const RepParams& p);

/// (K^ell, L^ell, E^ell, F^ell) scalars in closed form.
Z0Char z0_character(const RepParams& p);

/// F^ell scalar without the y^{-ell} factor, kept for comparison with z0_character.
cplx f_power_without_y(const RepParams& p);

/// Inverts z0_character for fixed strand data (u, x) with principal ell-th roots.
RepParams lift_character(const Z0Char& c, const RootContext& ctx, cplx u, cplx x);

struct GaugeU {
    Vec diag;
    cplx z;
};

/// U_nn = z^n prod_{m<=n} c_m^{-1} with z = (prod c_m)^{1/ell}, so that U^{-1} F-hat U = z B^{-1}.
GaugeU gauge_U(const RepParams& p);

/// Single prefactor z with z^ell = (x^ell v^{-ell} - 1)(v^ell - x^ell).
GaugeU gauge_U_single_prefactor(const RepParams& p);

/// Relative residual of U^{-1} F-hat U against target * B^{-1}.
double gauge_conjugation_residual(const RepParams& p, const GaugeU& g, cplx target);

/// P_n v_m = delta_{nm} v_m, n in 1 .. ell.
Mat projector(const RootContext& ctx, int n);

struct GenericityThresholds {
    double min_modulus = 1e-6;
    double max_condition = 1e8;
};

/// Both inputs and their braided outputs have nonvanishing c_m and eta, the
/// braiding denominators stay away from zero, and the inverses taken by the
/// generator-action checks are well conditioned.
bool is_generic(const RepParams& p, const RepParams& q, const GenericityThresholds& th = {});

struct RelationResiduals {
    double relations = 0.0;   ///< six defining relations at t = eps
    double centrality = 0.0;  ///< l-th powers scalar and equal to z0_character
    double casimir = 0.0;     ///< EF + K eps^{-1} + L^{-1} eps = u (x + x^{-1})
    double center = 0.0;      ///< prod_j (c - K eps^{j+1} - L^{-1} eps^{-j-1}) = E^l F^l

    double max() const;
};

/// Relative residuals of the algebra identities on build_rep(p).
RelationResiduals relation_residuals(const RepParams& p);

/// Nullity of the stacked commutator system of {K, L, E, F}.
int commutant_dimension(const RepMatrices& r, double rel_tol = 1e-9);

}  // namespace holobraid
