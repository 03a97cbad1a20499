#pragma once

#include <string>
#include <vector>

#include "ga/angle_bivector.hpp"
#include "ga/angles.hpp"

namespace ga {

/// Outcome of one identity evaluation. An identity passes when
/// residual <= eps_identity * max(1, lhs_norm, rhs_norm). Boolean checks
/// report residual 0 or 1.
struct IdentityResult {
    std::string name;
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double residual = 0.0;
    bool passed = false;
    std::string inputs_digest;
};

IdentityResult make_identity_result(std::string name, const Multivector& lhs,
                                    const Multivector& rhs, double eps,
                                    std::string digest);
IdentityResult make_scalar_result(std::string name, double lhs, double rhs,
                                  double eps, std::string digest);
IdentityResult make_bool_result(std::string name, bool agree,
                                std::string digest);

/// reverse(A) B = ||A|| ||B|| exp(Phi) for same-grade blades, with the
/// oriented angle bivector built from the same principal bases.
IdentityResult check_product_rotor_formula(const Blade& a, const Blade& b,
                                           const Tolerance& tol = {},
                                           std::string digest = "");

/// The mixed-grade extension: the smaller blade rotates only the
/// projective part of the larger one, whose orthogonal subblade rides
/// along as a wedge factor.
IdentityResult check_mixed_product_formula(const Blade& a, const Blade& b,
                                           const Tolerance& tol = {},
                                           std::string digest = "");

/// Norms of the six component subproducts against the angle functionals
/// (scalar product vs max-symmetrized, contractions vs the two asymmetric
/// angles, dot products vs min-symmetrized, outer vs complementary).
std::vector<IdentityResult> check_subproduct_norms(const Blade& a,
                                                   const Blade& b,
                                                   const Tolerance& tol = {},
                                                   std::string digest = "");

/// Signed versions with oriented angles, orthogonal subblades, and the
/// joint-span pseudoscalar for the outer product.
std::vector<IdentityResult> check_oriented_subproducts(
    const Blade& a, const Blade& b, const Tolerance& tol = {},
    std::string digest = "");

/// Commutator/anticommutator suite: the sum/difference/norm splitting of
/// the two products, their mutual orthogonality, squares, the norm
/// Pythagoras, hyperbolic forms for equal grades, and the grade partition
/// through the orthogonal subblade.
std::vector<IdentityResult> check_commutator_suite(const Blade& a,
                                                   const Blade& b,
                                                   const Tolerance& tol = {},
                                                   std::string digest = "");

/// Predicate agreement: vanishing of cosh/sinh of the angle bivector and
/// blade (anti)commutation, against the right-angle-count parity rule.
IdentityResult check_vanishing_conditions(const Blade& a, const Blade& b,
                                          const Tolerance& tol = {},
                                          std::string digest = "");

/// Duality: (AB)* = A B*, the outer/contraction dual swap w.r.t. the
/// full-space pseudoscalar, and - when the blades have equal grade and
/// trivially intersecting spans - the exponential duality w.r.t. the
/// product of rotation planes. Unmet preconditions yield a skipped entry.
std::vector<IdentityResult> check_duality(const Blade& a, const Blade& b,
                                          const Tolerance& tol = {},
                                          std::string digest = "");

/// Reconstructs A from the grade components of AB times B^{-1}, checking
/// each component against the projection of A onto the corresponding
/// coordinate subspace.
IdentityResult check_product_reconstruction(const Blade& a, const Blade& b,
                                            const Tolerance& tol = {},
                                            std::string digest = "");

/// Grassmann-algebra forms: inner product vs max-symmetrized angle, outer
/// product vs complementary angle, and the contraction A~ _| B split
/// through the orthogonal subblade, with its vanishing criterion.
std::vector<IdentityResult> check_grassmann_products(const Blade& a,
                                                     const Blade& b,
                                                     const Tolerance& tol = {},
                                                     std::string digest = "");

/// Hyperbolic-function properties of a homogeneous multivector: series
/// consistency with exp, parity, reversion, grade support, and the norm
/// identities by grade mod 4.
std::vector<IdentityResult> check_hyperbolic_properties(
    const Multivector& h, const Tolerance& tol = {}, std::string digest = "");

/// cosh(M) and sinh(N) commute whenever M and N do.
IdentityResult check_hyperbolic_commuting(const Multivector& m,
                                          const Multivector& n,
                                          const Tolerance& tol = {},
                                          std::string digest = "");

/// Principal angles recovered from a blade product alone (the method of
/// Hitzer), via the grade ladder and the bivector split of the second
/// component over the lowest one.
struct HitzerRecovery {
    int zero_count = 0;   // d
    int last_acute = 0;   // D
    std::vector<double> thetas;       // size p, ascending
    std::vector<Multivector> planes;  // rotation planes for the open angles
    /// Unit blade collecting the right-angle planes and the orthogonal
    /// subblade (the normalized lowest-grade component; scalar 1 when the
    /// product has a scalar part).
    Multivector perp_factor;
};

/// Recovers principal data from product = reverse(A) B for unit blades
/// with positive relative orientation, grade(A) = p <= q = grade(B).
/// Raises malformed_product_error when the grade structure is not that of
/// a blade product.
HitzerRecovery hitzer_recover(const Multivector& product, int p, int q,
                              const Tolerance& tol = {});

} // namespace ga
