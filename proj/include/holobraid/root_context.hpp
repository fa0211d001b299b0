#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "holobraid/error.hpp"

namespace holobraid {

using cplx = std::complex<double>;

/// Odd degree ell together with eps = exp(2 pi i / ell) and its power table.
///
/// Copies share one immutable table, so contexts are cheap to pass by value
/// and safe to read from several threads.
class RootContext {
public:
    int ell() const noexcept { return data_->ell; }
    cplx eps() const noexcept { return data_->powers[1]; }

    /// eps^k for any integer k, reduced mod ell.
    cplx eps_pow(long k) const noexcept;

    /// Table of eps^k for k = 0 .. 2 ell - 1.
    const std::vector<cplx>& eps_powers() const noexcept { return data_->powers; }

    /// Index k in [0, ell) minimizing |value - eps^(2k)| and the distance found.
    std::pair<int, double> nearest_even_power(cplx value) const;

    friend RootContext primitive_root(int ell);

private:
    struct Data {
        int ell;
        std::vector<cplx> powers;
    };
    explicit RootContext(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// Throws Error(InvalidDegree) unless ell is odd and at least 3.
RootContext primitive_root(int ell);

/// Principal branch of w^(1/n).
cplx principal_root(cplx w, int n);

}  // namespace holobraid
