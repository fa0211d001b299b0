#include "holobraid/root_context.hpp"

#include <cmath>
#include <numbers>

namespace holobraid {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDegree: return "invalid-degree";
        case ErrorKind::SingularParameter: return "singular-parameter";
        case ErrorKind::DegenerateSpectralParameter: return "degenerate-spectral-parameter";
        case ErrorKind::InvalidParams: return "invalid-params";
        case ErrorKind::NonGeneric: return "non-generic";
        case ErrorKind::DegenerateCharacter: return "degenerate-character";
        case ErrorKind::InconsistentLift: return "inconsistent-lift";
        case ErrorKind::SingularBraiding: return "singular-braiding";
        case ErrorKind::NonFactorizable: return "non-factorizable";
        case ErrorKind::NoIntertwiner: return "no-intertwiner";
        case ErrorKind::BranchMismatch: return "branch-mismatch";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::RejectedTriple: return "rejected-triple";
        case ErrorKind::Assembly: return "assembly";
        case ErrorKind::SamplingExhausted: return "sampling-exhausted";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

RootContext primitive_root(int ell) {
    if (ell < 3 || ell % 2 == 0) {
        throw Error(ErrorKind::InvalidDegree, "degree must be odd and >= 3, got " + std::to_string(ell));
    }
    auto d = std::make_shared<RootContext::Data>();
    d->ell = ell;
    d->powers.resize(2 * static_cast<std::size_t>(ell));
    for (int k = 0; k < 2 * ell; ++k) {
        // reduce before evaluating so eps^ell is exactly 1
        const double angle = 2.0 * std::numbers::pi * (k % ell) / ell;
        d->powers[k] = std::polar(1.0, angle);
    }
    return RootContext(std::move(d));
}

cplx RootContext::eps_pow(long k) const noexcept {
    const long l = data_->ell;
    long r = k % l;
    if (r < 0) r += l;
    return data_->powers[static_cast<std::size_t>(r)];
}

std::pair<int, double> RootContext::nearest_even_power(cplx value) const {
    int best = 0;
    double dist = std::abs(value - 1.0);
    for (int k = 1; k < ell(); ++k) {
        const double d = std::abs(value - eps_pow(2L * k));
        if (d < dist) {
            dist = d;
            best = k;
        }
    }
    return {best, dist};
}

cplx principal_root(cplx w, int n) {
    if (w == cplx(0.0)) return 0.0;
    return std::exp(std::log(w) / static_cast<double>(n));
}

}  // namespace holobraid
