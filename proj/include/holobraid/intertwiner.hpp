#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holobraid/cyclic_rep.hpp"

namespace holobraid {

enum class Gen { K, L, E, F };

/// rho1 (x) rho2 applied to Delta(g), or to sigma o Delta(g) when opposite is set.
/// Slot 1 is the left Kronecker factor: index (n, m) -> n * ell + m.
Mat coproduct_rep(const RepMatrices& r1, const RepMatrices& r2, Gen g, bool opposite);
Mat coproduct_rep(const RepParams& p1, const RepParams& p2, Gen g, bool opposite);

using ParamPair = std::pair<RepParams, RepParams>;

/// Output colorings: beta_inverse of the input characters, lifted with the
/// strand data (u, x) of the matching input slot.
ParamPair braided_rep_pair(const RepParams& p1, const RepParams& p2);

struct Intertwiner {
    Mat R;
    int kernel_dim = 0;
    double residual = 0.0;
    double gap_ratio = 0.0;
    cplx scalar_gauge{1.0};
    RepParams in1, in2, out1, out2;
};

struct SolveOptions {
    double gap_ratio = 1e6;
    double null_rel_tol = 1e-9;
    bool normalize = true;
};

struct NullspaceInfo {
    int kernel_dim = 0;
    double gap_ratio = 0.0;
    int unknowns = 0;
    int equations = 0;
    std::vector<double> smallest;  ///< trailing singular values relative to the largest, ascending
    Mat R;                         ///< right singular vector of the smallest singular value
};

/// Raw nullspace data of the intertwining system for an explicit target pair.
NullspaceInfo intertwiner_nullspace(const RepParams& p1, const RepParams& p2, const RepParams& q1,
                                    const RepParams& q2, const SolveOptions& opts = {});

/// Nullspace of N_g R = R M_g over g in {K, L, E, F} together with R (E (x) 1) = (E (x) L) R.
/// Throws Error(NoIntertwiner) for an empty kernel and Error(NonGeneric) for a degenerate one.
Intertwiner solve_intertwiner(const RepParams& p1, const RepParams& p2, const SolveOptions& opts = {});

/// Same system with an explicit target pair; used for negative controls.
Intertwiner solve_intertwiner_to(const RepParams& p1, const RepParams& p2, const RepParams& q1,
                                 const RepParams& q2, const SolveOptions& opts = {});

/// max_g ||N_g R - R M_g|| / (||R|| (||M_g|| + ||N_g||)).
double intertwining_residual(const Mat& R, const RepParams& p1, const RepParams& p2, const RepParams& q1,
                             const RepParams& q2);

/// Scales by det(R)^{-1/ell^2} and a root of unity fixing the phase of the
/// largest entry into [0, 2 pi / ell^2). Returns the total factor applied.
cplx det_normalize(Mat& R, int ell);

/// log|det M| via LU.
double log_abs_det(const Mat& m);

struct ChiData {
    cplx chi1, chi2;
    int a_exp = 0;
    cplx s, t;
    cplx z2, z2_tilde;
    double chi1_mismatch = 0.0;
    double chi2_mismatch = 0.0;
    double a_mismatch = 0.0;
};

/// Snaps chi1 = y1 u2 / (y~1 v~2), chi2 = z2 y~2 u1 v~1 / (y2 z~2) and
/// eps^{-2a} = v~1 v~2 / (v1 v2) to ell-th roots of unity; s = eps chi1 chi2 y~1 v~2 z~2 / (u1 v~1 y~2),
/// t = v~2 / v2. Throws Error(BranchMismatch) if a candidate is off the unit-root lattice.
ChiData chi_data(const RepParams& p1, const RepParams& p2, const RepParams& q1, const RepParams& q2,
                 double tol = 1e-8);

struct ClosedFormParts {
    Mat D;       ///< diagonal eps^{2nm} chi1^{-n} chi2^m
    Mat BaU;     ///< B^a (x) U_out
    Mat R1;      ///< Phi(s eps^{-2} W), W = B (x) B^{-1}
    Mat UinInv;  ///< 1 (x) U_in^{-1}
    ChiData chi;
    std::vector<cplx> orbit;
};

enum class PhiBase { One, Analytic };
enum class GaugeScale { Unit, Unimodular };

ClosedFormParts closed_form_parts(const RepParams& p1, const RepParams& p2, const RepParams& q1,
                                  const RepParams& q2, PhiBase base = PhiBase::One,
                                  GaugeScale gauge = GaugeScale::Unit);

/// W = B (x) B^{-1} as a permutation matrix.
Mat shift_pair(const RootContext& ctx, bool inverse_second = true);

/// sum_k values[k] Pi_k with Pi_k the eigenprojector of W for eps^{2k}.
Mat function_of_w(const RootContext& ctx, const std::vector<cplx>& values);

/// D (B^a (x) U_out) R1 (1 (x) U_in^{-1}), det-normalized.
Intertwiner closed_form_R(const RepParams& p1, const RepParams& p2);

struct ScalarFit {
    cplx scalar;
    double deviation;
};

/// scalar = <R2, R1> / <R2, R2>, deviation = ||R1 - scalar R2|| / ||R1||.
ScalarFit compare_up_to_scalar(const Mat& r1, const Mat& r2);

struct GeneratorCheck {
    std::string formula;
    std::string variant;
    double residual = 0.0;
    bool passed = false;
    bool skipped = false;
};

/// Compares R w R^{-1} with the image formula on the output pair for every
/// generator formula and variant.
std::vector<GeneratorCheck> check_generator_action(const Intertwiner& r, double tol = 1e-8);

/// Max over central probes w of ||R w_in R^{-1} - w_out|| / ||w_out||.
double central_invariance_residual(const Intertwiner& r);

struct DetSample {
    cplx s;
    double log_abs_det;
};

/// Closed-form determinant sample for a pair, before normalization.
DetSample det_sample(const RepParams& p1, const RepParams& p2, PhiBase base, GaugeScale gauge);

struct DetProbe {
    bool conclusive = false;
    double alpha = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;
    std::vector<std::pair<std::string, double>> candidates;
    std::string matched;
};

/// Least squares of log|det R| against log|1 - s^ell|.
DetProbe det_exponent_probe(int ell, const std::vector<DetSample>& samples);

}  // namespace holobraid
