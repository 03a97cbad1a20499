#pragma once

#include <vector>

#include "ga/algebra.hpp"
#include "ga/linalg.hpp"
#include "ga/tolerance.hpp"

namespace ga {

/// An oriented p-dimensional subspace of R^n, stored as an ordered
/// orthonormal frame. The zero-dimensional subspace has an empty frame.
class Subspace {
public:
    Subspace(int ambient_dim, std::vector<lin::Vec> orthonormal_frame);

    /// Orthonormalizes the given spanning vectors (modified Gram-Schmidt
    /// with a re-orthogonalization pass). Rank below the row count raises
    /// rank_error.
    static Subspace from_vectors(int ambient_dim,
                                 const std::vector<lin::Vec>& vectors,
                                 const Tolerance& tol = {});

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(frame_.size()); }
    const std::vector<lin::Vec>& frame() const { return frame_; }

    lin::Vec project(const lin::Vec& v) const;
    /// max_i ||v_i - P(v_i)|| over the other subspace's frame; zero when
    /// `other` is contained in this subspace.
    double containment_residual(const Subspace& other) const;

private:
    int n_;
    std::vector<lin::Vec> frame_;
};

/// A multivector certified simple, carrying its grade, norm, and an
/// orthonormal factorization mv = sign_scale * (f_1 ^ ... ^ f_p).
/// The zero blade (norm 0, no factors) is representable at every grade.
class Blade {
public:
    Blade(Multivector mv, int grade, std::vector<lin::Vec> factors,
          double sign_scale);

    static Blade zero(Algebra alg, int grade);
    static Blade scalar(Algebra alg, double value);

    const Multivector& mv() const { return mv_; }
    int grade() const { return grade_; }
    double norm() const { return norm_; }
    const std::vector<lin::Vec>& factors() const { return factors_; }
    double sign_scale() const { return sign_scale_; }
    bool is_zero() const { return norm_ == 0.0; }

    Subspace subspace() const;
    /// The geometric square, a scalar for blades.
    double square() const;

private:
    Multivector mv_;
    int grade_;
    double norm_;
    std::vector<lin::Vec> factors_;
    double sign_scale_;
};

/// Certifies that a homogeneous multivector is simple and factors it.
/// Factors are extracted by projecting the canonical factors of the
/// largest-coefficient basis blade onto the carried subspace (ties broken
/// by lowest bitmask), then orthonormalizing. A reconstruction residual
/// above eps_structural * ||m|| raises not_a_blade_error.
Blade certify_blade(const Multivector& m, const Tolerance& tol = {});

/// The blade scale * (frame_1 ^ ... ^ frame_p); equals the geometric
/// product of the frame vectors since they are orthonormal.
Blade blade_from_frame(const Subspace& s, double scale, Algebra alg);
Blade blade_from_frame(const Subspace& s, double scale);

/// Extended orthogonal projection applied factorwise. The result is a
/// (possibly zero) p-vector supported on the target subspace.
Multivector project_blade(const Blade& b, const Subspace& w);

/// B^{-1} = B~ / ||B||^2. Raises rank_error on the zero blade.
Blade blade_inverse(const Blade& b);

/// Wedge of ambient coordinate vectors, as a multivector.
Multivector wedge_vectors(Algebra alg, const std::vector<lin::Vec>& vectors);

} // namespace ga
