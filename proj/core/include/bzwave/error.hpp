#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bzwave {

enum class ErrorKind {
    invalid_argument,
    complex_roots,
    no_bracket,
    out_of_regime,
    domain,
    condition_violated,
    resonance,
    omega_too_large,
    search_failure,
    ordering,
    window_too_short,
    instability,
    boundary_hit,
    poor_fit,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (the CLI in
/// particular) which contract was broken.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bzwave
