#pragma once

#include "ga/errors.hpp"

namespace ga {

/// Numerical tolerances used throughout the library.
///
/// `structural` guards structural predicates (simplicity, orthonormality,
/// grade support); `identity` bounds residuals of algebraic identities.
class Tolerance {
public:
    Tolerance() = default;

    Tolerance(double structural, double identity)
        : structural_(structural), identity_(identity) {
        if (!(structural > 0.0 && structural < 1e-3) ||
            !(identity > 0.0 && identity < 1e-3)) {
            throw dimension_error("tolerances must lie in (0, 1e-3)");
        }
    }

    double structural() const { return structural_; }
    double identity() const { return identity_; }

private:
    double structural_ = 1e-10;
    double identity_ = 1e-9;
};

} // namespace ga
