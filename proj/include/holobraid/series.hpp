#pragma once

#include <optional>
#include <vector>

#include "holobraid/root_context.hpp"

namespace holobraid {

/// Truncated power series in z with complex coefficients, z^0 .. z^order.
class Series {
public:
    explicit Series(int order);
    Series(std::vector<cplx> coeffs);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    cplx operator[](int n) const { return coeffs_.at(n); }
    cplx& operator[](int n) { return coeffs_.at(n); }

    Series operator+(const Series& rhs) const;
    Series operator-(const Series& rhs) const;
    Series operator*(const Series& rhs) const;
    Series operator*(cplx k) const;

    /// Requires a nonzero constant term.
    Series reciprocal() const;
    /// Requires a zero constant term.
    Series exp() const;
    /// Requires constant term 1.
    Series log() const;
    /// f(z) -> f(a z).
    Series rescale(cplx a) const;

    cplx evaluate(cplx z) const;

private:
    void check_same_order(const Series& rhs) const;
    std::vector<cplx> coeffs_;
};

inline constexpr int kDefaultSeriesOrder = 40;

/// b_n = prod_{k=1}^n (1 - q^k)/(1 - q).
cplx q_factorial_b(int n, cplx q);

/// Coefficients (1-q)^n / prod_{k<=n}(1-q^k) of f(z;q).
Series series_f(cplx q, int order = kDefaultSeriesOrder);

/// Product form prod_{n>=0} (1 - (1-q) z q^n)^{-1}, expanded through its logarithm.
Series series_f_product(cplx q, int order = kDefaultSeriesOrder);

/// Max coefficient modulus of g(zq) - (1-z) g(z), relative to max(1, |g_n|), for g(z) = f(z / (1-q); q) = prod_{n>=0} (1 - z q^n)^{-1}.
double check_f_functional(cplx q, int order = kDefaultSeriesOrder);

/// prod_{m=1}^ell (1 - eps^{2m} z)^{-m/ell}.
Series phi_series(const RootContext& ctx, int order = kDefaultSeriesOrder);

/// Analytic value of the same product at a point, principal logarithms.
cplx phi_value(const RootContext& ctx, cplx z);

enum class DeqVariant { Derived, Printed };

/// Values at z_k = s eps^{-2+2k}, k = 0 .. ell-1, from the difference equation with phi_0 = 1.
///
/// The step factor is t (1 - z_{k+1})^{-1} for Derived and t (1 - eps^2 / z_k)^{-1} for Printed.
/// t defaults to the principal (1 - s^ell)^{1/ell}.
std::vector<cplx> phi_orbit(const RootContext& ctx, cplx s, DeqVariant variant = DeqVariant::Derived,
                            std::optional<cplx> t = std::nullopt);

/// |prod of the ell step factors - 1| around the orbit.
double phi_orbit_closure(const RootContext& ctx, cplx s);

/// delta_{nn'} delta_{mm'} n! b_m(q).
cplx pairing_monomial(int n, int m, int n2, int m2, cplx q);

/// Coefficient of (lambda S1 + S2)^n e_0 split by the number m of S1 factors.
std::vector<cplx> q_shift_coefficients(int n, cplx q);

/// Max residual of the total-coefficient, Gaussian-binomial and b_n recursion checks.
double q_shift_coefficient_check(int n, cplx q);

}  // namespace holobraid
