#pragma once

#include <stdexcept>
#include <string>

namespace szegolab {

// Exit-code contract used by the CLI: argument/capability problems map to 2,
// numeric/precision problems map to 3, failed residual checks map to 4.

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input point violates the interior margin (distance to boundary < 1e-8).
struct margin_error : argument_error {
    using argument_error::argument_error;
};

// Requested combination has no closed form / no supported implementation.
struct capability_error : argument_error {
    using argument_error::argument_error;
};

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gram matrix too ill-conditioned for the requested degree range.
struct degrade_degree_error : precision_error {
    degrade_degree_error(const std::string& msg, double cond, int suggested_hi)
        : precision_error(msg), condition_number(cond), suggested_max_degree(suggested_hi) {}
    double condition_number;
    int suggested_max_degree;
};

// |K(z,w)| below the division-hazard floor when forming kernel quotients.
struct division_hazard_error : precision_error {
    using precision_error::precision_error;
};

// branch_power(z)^{n+1} != jac_det(z)^n beyond tolerance.
struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature refinement failed to converge (successive ratio > 0.5).
struct accuracy_error : precision_error {
    using precision_error::precision_error;
};

// A kernel produced values violating its own invariants (k0 <= 0, F^2 << 0).
struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace szegolab
