#include "holobraid/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace holobraid {

namespace {

constexpr double kSingularTol = 1e-14;

void require_order(int order) {
    if (order < 0) throw Error(ErrorKind::InvalidInput, "series order must be non-negative");
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

Series::Series(int order) {
    require_order(order);
    coeffs_.assign(static_cast<std::size_t>(order) + 1, cplx(0.0));
}

Series::Series(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "series needs at least one coefficient");
}

void Series::check_same_order(const Series& rhs) const {
    if (order() != rhs.order()) throw Error(ErrorKind::InvalidInput, "series truncation orders differ");
}

Series Series::operator+(const Series& rhs) const {
    check_same_order(rhs);
    Series out(*this);
    for (int n = 0; n <= order(); ++n) out.coeffs_[n] += rhs.coeffs_[n];
    return out;
}

Series Series::operator-(const Series& rhs) const { return *this + rhs * cplx(-1.0); }

Series Series::operator*(const Series& rhs) const {
    check_same_order(rhs);
    Series out(order());
    for (int i = 0; i <= order(); ++i) {
        for (int j = 0; i + j <= order(); ++j) out.coeffs_[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return out;
}

Series Series::operator*(cplx k) const {
    Series out(*this);
    for (auto& c : out.coeffs_) c *= k;
    return out;
}

Series Series::reciprocal() const {
    const cplx c0 = coeffs_[0];
    if (std::abs(c0) < kSingularTol) throw Error(ErrorKind::SingularParameter, "reciprocal of a series with zero constant term");
    Series out(order());
    out.coeffs_[0] = 1.0 / c0;
    for (int n = 1; n <= order(); ++n) {
        cplx acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += coeffs_[k] * out.coeffs_[n - k];
        out.coeffs_[n] = -acc / c0;
    }
    return out;
}

Series Series::exp() const {
    if (std::abs(coeffs_[0]) > kSingularTol) throw Error(ErrorKind::InvalidInput, "exp needs a zero constant term");
    Series out(order());
    out.coeffs_[0] = 1.0;
    for (int n = 1; n <= order(); ++n) {
        cplx acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * coeffs_[k] * out.coeffs_[n - k];
        out.coeffs_[n] = acc / static_cast<double>(n);
    }
    return out;
}

Series Series::log() const {
    if (std::abs(coeffs_[0] - 1.0) > kSingularTol) throw Error(ErrorKind::InvalidInput, "log needs constant term 1");
    // (log f)' = f' / f
    Series out(order());
    for (int n = 1; n <= order(); ++n) {
        cplx acc = static_cast<double>(n) * coeffs_[n];
        for (int k = 1; k < n; ++k) acc -= static_cast<double>(k) * out.coeffs_[k] * coeffs_[n - k];
        out.coeffs_[n] = acc / static_cast<double>(n);
    }
    return out;
}

Series Series::rescale(cplx a) const {
    Series out(*this);
    cplx p = 1.0;
    for (auto& c : out.coeffs_) {
        c *= p;
        p *= a;
    }
    return out;
}

cplx Series::evaluate(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx q_factorial_b(int n, cplx q) {
    if (n < 0) throw Error(ErrorKind::InvalidInput, "q_factorial_b needs n >= 0");
    if (std::abs(1.0 - q) < kSingularTol) throw Error(ErrorKind::SingularParameter, "q = 1");
    cplx b = 1.0;
    cplx qk = 1.0;
    for (int k = 1; k <= n; ++k) {
        qk *= q;
        b *= (1.0 - qk) / (1.0 - q);
    }
    return b;
}

Series series_f(cplx q, int order) {
    require_order(order);
    Series f(order);
    f[0] = 1.0;
    cplx qk = 1.0;
    for (int n = 1; n <= order; ++n) {
        qk *= q;
        if (std::abs(1.0 - qk) < kSingularTol) throw Error(ErrorKind::SingularParameter, "q^k = 1 within the truncation order");
        f[n] = f[n - 1] * (1.0 - q) / (1.0 - qk);
    }
    return f;
}

Series series_f_product(cplx q, int order) {
    require_order(order);
    Series lg(order);
    cplx qk = 1.0;
    cplx ak = 1.0;
    for (int k = 1; k <= order; ++k) {
        qk *= q;
        ak *= (1.0 - q);
        if (std::abs(1.0 - qk) < kSingularTol) throw Error(ErrorKind::SingularParameter, "q^k = 1 within the truncation order");
        lg[k] = ak / (static_cast<double>(k) * (1.0 - qk));
    }
    return lg.exp();
}

double check_f_functional(cplx q, int order) {
    // the (1 - z) form holds for prod (1 - z q^n)^{-1}, i.e. f(z / (1 - q); q)
    const Series f = series_f(q, order).rescale(1.0 / (1.0 - q));
    double worst = 0.0;
    cplx qn = 1.0;
    for (int n = 0; n <= order; ++n) {
        const cplx lhs = qn * f[n];
        const cplx rhs = f[n] - (n > 0 ? f[n - 1] : cplx(0.0));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(f[n])));
        qn *= q;
    }
    return worst;
}

Series phi_series(const RootContext& ctx, int order) {
    if (order < 1) throw Error(ErrorKind::InvalidInput, "phi_series needs order >= 1");
    const int ell = ctx.ell();
    Series lg(order);
    for (int m = 1; m <= ell; ++m) {
        const cplx w = ctx.eps_pow(2L * m);
        cplx wk = 1.0;
        for (int k = 1; k <= order; ++k) {
            wk *= w;
            lg[k] += static_cast<double>(m) * wk / static_cast<double>(k);
        }
    }
    return (lg * cplx(1.0 / ell)).exp();
}

cplx phi_value(const RootContext& ctx, cplx z) {
    const int ell = ctx.ell();
    cplx lg = 0.0;
    for (int m = 1; m <= ell; ++m) lg -= (static_cast<double>(m) / ell) * std::log(1.0 - ctx.eps_pow(2L * m) * z);
    return std::exp(lg);
}

std::vector<cplx> phi_orbit(const RootContext& ctx, cplx s, DeqVariant variant, std::optional<cplx> t) {
    const int ell = ctx.ell();
    const cplx one_minus = 1.0 - std::pow(s, ell);
    if (std::abs(one_minus) < 1e-12) throw Error(ErrorKind::DegenerateSpectralParameter, "s^ell = 1");
    const cplx tt = t.value_or(principal_root(one_minus, ell));
    std::vector<cplx> z(ell);
    for (int k = 0; k < ell; ++k) z[k] = s * ctx.eps_pow(2L * k - 2);
    std::vector<cplx> out(ell);
    out[0] = 1.0;
    for (int k = 0; k + 1 < ell; ++k) {
        cplx denom;
        if (variant == DeqVariant::Derived) {
            denom = 1.0 - z[k + 1];
        } else {
            if (std::abs(z[k]) < kSingularTol) throw Error(ErrorKind::DegenerateSpectralParameter, "s = 0 in the inverted step factor");
            denom = 1.0 - ctx.eps_pow(2) / z[k];
        }
        out[k + 1] = tt * out[k] / denom;
    }
    return out;
}

double phi_orbit_closure(const RootContext& ctx, cplx s) {
    const int ell = ctx.ell();
    const cplx one_minus = 1.0 - std::pow(s, ell);
    if (std::abs(one_minus) < 1e-12) throw Error(ErrorKind::DegenerateSpectralParameter, "s^ell = 1");
    const cplx t = principal_root(one_minus, ell);
    cplx acc = 1.0;
    for (int k = 0; k < ell; ++k) acc *= t / (1.0 - s * ctx.eps_pow(2L * k));
    return std::abs(acc - 1.0);
}

cplx pairing_monomial(int n, int m, int n2, int m2, cplx q) {
    if (std::min({n, m, n2, m2}) < 0) throw Error(ErrorKind::InvalidInput, "pairing indices must be non-negative");
    if (std::abs(1.0 - q) < kSingularTol) throw Error(ErrorKind::SingularParameter, "q = 1");
    if (n != n2 || m != m2) return 0.0;
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    return fact * q_factorial_b(m, q);
}

std::vector<cplx> q_shift_coefficients(int n, cplx q) {
    if (n < 1 || n > 12) throw Error(ErrorKind::InvalidInput, "q_shift_coefficients needs 1 <= n <= 12");
    const int dim = n + 1;
    Eigen::MatrixXcd s1 = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd s2 = Eigen::MatrixXcd::Zero(dim, dim);
    cplx qk = 1.0;
    for (int k = 0; k + 1 < dim; ++k) {
        s1(k + 1, k) = qk;
        s2(k + 1, k) = 1.0;
        qk *= q;
    }
    // separate the words by S1-count through evaluation at dim-th roots of unity
    std::vector<cplx> top(dim);
    for (int j = 0; j < dim; ++j) {
        const cplx lam = std::polar(1.0, 2.0 * std::numbers::pi * j / dim);
        const Eigen::MatrixXcd step = lam * s1 + s2;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(0) = 1.0;
        for (int r = 0; r < n; ++r) v = step * v;
        top[j] = v(n);
    }
    std::vector<cplx> coeffs(dim);
    for (int m = 0; m < dim; ++m) {
        cplx acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += std::polar(1.0, -2.0 * std::numbers::pi * j * m / dim) * top[j];
        coeffs[m] = acc / static_cast<double>(dim);
    }
    return coeffs;
}

double q_shift_coefficient_check(int n, cplx q) {
    const auto coeffs = q_shift_coefficients(n, q);
    double worst = 0.0;

    cplx total = 0.0;
    for (const auto& c : coeffs) total += c;
    cplx expected = 1.0;
    cplx qj = 1.0;
    for (int j = 0; j < n; ++j) {
        expected *= 1.0 + qj;
        qj *= q;
    }
    worst = std::max(worst, rel_err(total, expected));

    const cplx bn = q_factorial_b(n, q);
    for (int m = 0; m <= n; ++m) {
        const cplx gauss = std::pow(q, m * (m - 1) / 2) * bn / (q_factorial_b(m, q) * q_factorial_b(n - m, q));
        worst = std::max(worst, rel_err(coeffs[m], gauss));
    }

    for (int k = 1; k <= n; ++k) {
        const cplx qint = (1.0 - std::pow(q, k)) / (1.0 - q);
        worst = std::max(worst, rel_err(q_factorial_b(k, q), qint * q_factorial_b(k - 1, q)));
    }
    return worst;
}

}  // namespace holobraid
