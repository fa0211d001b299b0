#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holobraid {

enum class ErrorKind {
    InvalidDegree,
    SingularParameter,
    DegenerateSpectralParameter,
    InvalidParams,
    NonGeneric,
    DegenerateCharacter,
    InconsistentLift,
    SingularBraiding,
    NonFactorizable,
    NoIntertwiner,
    BranchMismatch,
    InvalidInput,
    RejectedTriple,
    Assembly,
    SamplingExhausted,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace holobraid
