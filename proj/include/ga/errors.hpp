#pragma once

#include <stdexcept>
#include <string>

namespace ga {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in different algebras, or a dimension is out of range.
struct dimension_error : error {
    using error::error;
};

/// Grade index out of range, or a homogeneous multivector was required.
struct grade_error : error {
    using error::error;
};

/// Simplicity certification failed: the multivector is not a blade.
struct not_a_blade_error : error {
    using error::error;
};

/// A frame is rank deficient, or a zero blade was passed where a
/// nonzero one is required.
struct rank_error : error {
    using error::error;
};

/// A power series failed to converge within the term budget.
struct convergence_error : error {
    using error::error;
};

/// A multivector does not have the grade structure of a blade product.
struct malformed_product_error : error {
    using error::error;
};

/// A blade does not span the subspace an operation expects.
struct subspace_mismatch_error : error {
    using error::error;
};

} // namespace ga
