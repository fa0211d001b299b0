#pragma once

#include <array>

#include "holobraid/intertwiner.hpp"

namespace holobraid {

/// Colorings along both bracketings of the triangle move.
/// lhs: (y1, z1) = B(y, z); (x1, z2) = B(x, z1); (x2, y2) = B(x1, y1).
/// rhs: (xa, ya) = B(x, y); (xb, za) = B(xa, z); (yb, zb) = B(ya, za).
struct Colorings {
    RepParams x, y, z;
    RepParams y1, z1, x1, z2, x2, y2;
    RepParams xa, ya, xb, za, yb, zb;

    /// Max distance between the final triples (x2, y2, z2) and (xb, yb, zb) on characters.
    double set_ybe_residual() const;
};

Colorings derive_colorings(const RepParams& x, const RepParams& y, const RepParams& z);

enum class Route { Oracle, ClosedForm };

/// Embeddings into the triple product, index (i, j, k) -> i ell^2 + j ell + k.
Mat embed12(const Mat& r, int ell);
Mat embed23(const Mat& r, int ell);
Mat embed13(const Mat& r, int ell);

struct HybeResult {
    cplx c;
    double residual = 0.0;
    double ratio_cross_check = 0.0;
    double set_residual = 0.0;
};

/// Least-squares scalar between R12 R13 R23 and R23 R13 R12 for six given matrices.
HybeResult hybe_from_matrices(const Mat& r12_l, const Mat& r13_l, const Mat& r23_l, const Mat& r23_r,
                              const Mat& r13_r, const Mat& r12_r, int ell);

HybeResult hybe_residual(const RepParams& x, const RepParams& y, const RepParams& z, Route route = Route::Oracle);

/// Constant Yang-Baxter residual of R0 = D (B^a (x) U_out U_in^{-1}) along the same chains.
double s0_diagnostic(const RepParams& x, const RepParams& y, const RepParams& z);

}  // namespace holobraid
