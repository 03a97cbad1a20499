#pragma once

#include <optional>

#include "ga/principal.hpp"

namespace ga {

/// All scalar angle functionals of a pair of subspaces or blades, in
/// radians. Oriented entries are present only when both blades are given.
struct AngleReport {
    double asym_vw = 0.0;   // in [0, pi/2]
    double asym_wv = 0.0;
    double comp = 0.0;      // symmetric in V, W
    double max_sym = 0.0;
    double min_sym = 0.0;
    double proj_factor_vw = 0.0;  // in [0, 1]

    std::optional<double> oriented_asym;     // in [0, pi]
    std::optional<double> oriented_comp;
    std::optional<double> oriented_max_sym;
    std::optional<double> oriented_proj_factor;  // in [-1, 1]
    /// False when reverse(A) * B = 0: oriented values then depend on the
    /// choice of principal bases.
    bool orientation_determinate = true;
};

/// cos(theta) = product of principal cosines when dim V <= dim W; pi/2
/// when dim V > dim W. Raises rank_error on a zero-dimensional input.
double asymmetric_angle(const Subspace& v, const Subspace& w,
                        const Tolerance& tol = {});

/// cos = product of principal sines; the asymmetric angle of V with the
/// orthogonal complement of W. Symmetric in V and W.
double complementary_angle(const Subspace& v, const Subspace& w,
                           const Tolerance& tol = {});

/// (max, min) of the two asymmetric angles.
std::pair<double, double> symmetrized_angles(const Subspace& v,
                                             const Subspace& w,
                                             const Tolerance& tol = {});

/// Full report including the oriented variants for a pair of blades.
AngleReport oriented_angles(const Blade& a, const Blade& b,
                            const Tolerance& tol = {});

/// The same functionals computed from already-known principal data.
double asymmetric_from(const PrincipalData& pd);          // V with W
double asymmetric_swapped_from(const PrincipalData& pd);  // W with V
double complementary_from(const PrincipalData& pd);

} // namespace ga
