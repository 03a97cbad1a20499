#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ga/principal.hpp"

namespace ga {

/// One rotation plane of an angle bivector: a positive angle paired with a
/// unit simple bivector. Planes of distinct terms are completely
/// orthogonal, so their rotors commute.
struct AngleTerm {
    double theta;
    Multivector plane;
};

/// The angle bivector Phi = sum theta_i I_i of a pair of subspaces. Its
/// exponential is a rotor carrying one subspace onto the other along a
/// minimal Grassmannian geodesic. The term list is authoritative; the
/// bivector form is derived from it.
class AngleBivector {
public:
    AngleBivector(Algebra alg, std::vector<AngleTerm> terms, bool oriented,
                  std::optional<PrincipalData> source = std::nullopt,
                  bool basis_dependent = false);

    const Algebra& algebra() const { return alg_; }
    const std::vector<AngleTerm>& terms() const { return terms_; }
    const Multivector& as_multivector() const { return mv_; }
    bool oriented() const { return oriented_; }
    const std::optional<PrincipalData>& source() const { return source_; }
    /// True when the construction involved a free choice of principal
    /// bases (a right angle on top, or an orientation flip at angle zero).
    bool basis_dependent() const { return basis_dependent_; }

    /// Same planes, angles multiplied by t (terms vanish at t = 0).
    AngleBivector scaled(double t) const;

    /// sqrt(sum theta_i^2): the arc-length distance the rotor covers.
    double length() const;

private:
    Algebra alg_;
    std::vector<AngleTerm> terms_;
    Multivector mv_;
    bool oriented_;
    std::optional<PrincipalData> source_;
    bool basis_dependent_;
};

/// Angle bivector between subspaces. For distinct dimensions the larger
/// subspace enters through its projective part, so the result has
/// min(dim V, dim W) planes at most; the dimension excess is not encoded.
AngleBivector angle_bivector(const Subspace& v, const Subspace& w,
                             const Tolerance& tol = {});

AngleBivector angle_bivector_from(const PrincipalData& pd, Algebra alg);

/// Oriented variant: when the relative orientation is -1, the largest
/// angle is replaced by its supplement on the reversed plane. If every
/// angle is zero the replacement plane is fabricated deterministically
/// (and flagged), preferring a direction orthogonal to both subspaces.
AngleBivector oriented_angle_bivector(const Blade& a, const Blade& b,
                                      const Tolerance& tol = {});

/// Oriented variant built from principal data already at hand, so a caller
/// can keep one set of principal bases across several identities.
AngleBivector oriented_angle_bivector_from(const PrincipalData& pd,
                                           Algebra alg);

/// Closed-form exponential: the product of the plane rotors
/// cos(theta_i) + sin(theta_i) I_i. Always has unit norm.
Multivector exp_angle_bivector(const AngleBivector& phi);

/// The two-sided rotor action exp(-Phi/2) E exp(Phi/2). Requires a unit
/// blade spanning the bivector's source subspace (when known).
Blade rotor_transport(const Blade& e, const AngleBivector& phi,
                      const Tolerance& tol = {});

/// Point at parameter t in [0,1] of the minimal geodesic generated by
/// phi, starting at the unit blade e.
Blade geodesic_sample(const AngleBivector& phi, const Blade& e, double t,
                      const Tolerance& tol = {});

double geodesic_length(const AngleBivector& phi);

/// One coordinate of exp(Phi): a subset of rotation planes, the product
/// of sines over the subset and cosines off it, the plane product, and
/// the coordinate blade obtained from the target's principal blade.
struct PluckerEntry {
    std::vector<int> indices;   // 1-based principal indices in the subset
    double coefficient;
    Multivector plane_product;      // I_i, grade 2|subset|
    Multivector coordinate_blade;   // F_i = I_i F
    std::string label;
};

/// Decomposition of exp(Phi) over subsets of rotation planes. The squared
/// coefficients sum to 1; they are normalized Pluecker coordinates of the
/// source subspace in the coordinate basis spanned by the principal
/// vectors f_i and the orthoprincipal directions g_i = e_i-perp.
std::vector<PluckerEntry> plucker_decomposition(const AngleBivector& phi);

/// Every size-m coordinate blade of the joint basis, with its coefficient
/// (zero off the rotation-plane subsets). The nonzero entries come first,
/// in subset counting order, followed by the vanishing ones.
std::vector<PluckerEntry> plucker_full_coordinates(const AngleBivector& phi);

} // namespace ga
