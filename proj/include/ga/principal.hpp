#pragma once

#include <vector>

#include "ga/blade.hpp"
#include "ga/linalg.hpp"

namespace ga {

/// Angles below this count as 0; angles within it of pi/2 count as right
/// angles. Thresholding the angle (after clamping the cosine) is far more
/// robust than thresholding singular values near 1.
inline constexpr double angle_zero_eps = 1e-8;

bool is_zero_angle(double theta);
bool is_right_angle(double theta);

/// Principal angles and associated principal bases of a pair of subspaces,
/// with the orientation signs relating them to a given pair of blades.
///
/// Invariants: thetas ascend in [0, pi/2]; e_basis has p vectors, f_basis
/// has q; e_i . f_j = delta_ij cos(theta_i); and the blades reconstruct as
/// A = sign_a ||A|| e_1...e_p, B = sign_b ||B|| f_1...f_q.
///
/// The bases are put in a deterministic normal form: sign_a is always +1
/// (when p >= 1), and sign_b is +1 whenever a basis vector can be flipped
/// freely (q > m, or the largest angle is a right angle). Otherwise sign_b
/// carries the genuine relative orientation.
struct PrincipalData {
    int n = 0;
    int p = 0;
    int q = 0;
    int m = 0;
    std::vector<double> thetas;        // size m, ascending
    std::vector<lin::Vec> e_basis;     // p vectors
    std::vector<lin::Vec> f_basis;     // q vectors
    int sign_a = 1;
    int sign_b = 1;
    int sign_ab = 1;
    int zero_count = 0;   // d = dim(V ^ W): angles below the zero threshold
    int last_acute = 0;   // D: largest 1-based index with theta_i != pi/2; 0 if none

    double theta(int i) const { return thetas[static_cast<std::size_t>(i)]; }
    double max_angle() const { return thetas.empty() ? 0.0 : thetas.back(); }

    Subspace v_subspace() const { return Subspace(n, e_basis); }
    Subspace w_subspace() const { return Subspace(n, f_basis); }

    /// Unit blades e_1...e_p and f_1...f_q of the principal bases.
    Multivector e_blade(Algebra alg) const;
    Multivector f_blade(Algebra alg) const;
    /// f_1...f_m (the first m factors of the f basis).
    Multivector f_proj_blade(Algebra alg) const;

    /// Unit principal-plane bivector I_i = (e_i ^ f_i)/||e_i ^ f_i|| for a
    /// 0-based index with a nonzero angle; throws on degenerate planes.
    Multivector principal_plane(Algebra alg, int i) const;
    /// Orthoprincipal vector e_i^perp = I_i f_i (0-based, nonzero angle).
    lin::Vec orthoprincipal_e(Algebra alg, int i) const;
    /// f_i^perp = e_i I_i.
    lin::Vec orthoprincipal_f(Algebra alg, int i) const;
};

/// Principal angles/bases of [A] and [B] via SVD of the cross-Gram matrix
/// of their orthonormal frames. Raises rank_error on zero blades.
PrincipalData principal_data(const Blade& a, const Blade& b,
                             const Tolerance& tol = {});

struct OrientationSign {
    int sign = 1;
    /// False when reverse(A) * B vanishes: the sign then depends on the
    /// choice of principal bases.
    bool determinate = true;
};

/// Sign of reverse(A) * B when it does not vanish (checked against
/// sign_a * sign_b); otherwise the basis-dependent product of signs.
OrientationSign relative_orientation(const PrincipalData& pd, const Blade& a,
                                     const Blade& b, const Tolerance& tol = {});

/// True iff V contains a nonzero vector orthogonal to all of W:
/// dim V > dim W, or some principal angle is a right angle.
bool partially_orthogonal(const Subspace& v, const Subspace& w,
                          const Tolerance& tol = {});

/// Split of the larger blade B = B_P ^ B_perp into a part aligned with
/// [A] and a completely orthogonal unit remainder. When p >= q the split
/// is trivial: B_P = B and B_perp = 1.
struct PODecomposition {
    Blade b_proj;
    Blade b_perp;
    Subspace w_proj;
    Subspace w_perp;
    PrincipalData principal;
};

PODecomposition po_decompose(const Blade& a, const Blade& b,
                             const Tolerance& tol = {});

} // namespace ga
