#include "ga/identities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace ga {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

// Structural decisions (is a product zero, does a predicate hold) use a
// looser cut than identity residuals; inputs are either exactly degenerate
// or bounded away from degeneracy by construction.
constexpr double vanish_eps = 1e-6;

Multivector unit_perp_blade(const PrincipalData& pd, Algebra alg,
                            bool of_b) {
    const auto& basis = of_b ? pd.f_basis : pd.e_basis;
    const int count = of_b ? pd.q : pd.p;
    Multivector acc = Multivector::scalar(alg, 1.0);
    for (int i = pd.m; i < count; ++i) {
        acc = geometric_product(
            acc, Multivector::from_vector(alg, basis[static_cast<std::size_t>(i)]));
    }
    return acc;
}

} // namespace

IdentityResult make_identity_result(std::string name, const Multivector& lhs,
                                    const Multivector& rhs, double eps,
                                    std::string digest) {
    IdentityResult r;
    r.name = std::move(name);
    r.lhs_norm = lhs.norm();
    r.rhs_norm = rhs.norm();
    r.residual = distance(lhs, rhs);
    r.passed = r.residual <= eps * std::max({1.0, r.lhs_norm, r.rhs_norm});
    r.inputs_digest = std::move(digest);
    return r;
}

IdentityResult make_scalar_result(std::string name, double lhs, double rhs,
                                  double eps, std::string digest) {
    IdentityResult r;
    r.name = std::move(name);
    r.lhs_norm = std::abs(lhs);
    r.rhs_norm = std::abs(rhs);
    r.residual = std::abs(lhs - rhs);
    r.passed = r.residual <= eps * std::max({1.0, r.lhs_norm, r.rhs_norm});
    r.inputs_digest = std::move(digest);
    return r;
}

IdentityResult make_bool_result(std::string name, bool agree,
                                std::string digest) {
    IdentityResult r;
    r.name = std::move(name);
    r.residual = agree ? 0.0 : 1.0;
    r.passed = agree;
    r.inputs_digest = std::move(digest);
    return r;
}

IdentityResult check_product_rotor_formula(const Blade& a, const Blade& b,
                                           const Tolerance& tol,
                                           std::string digest) {
    if (a.grade() != b.grade()) {
        throw grade_error("the rotor product formula needs equal grades");
    }
    const Multivector lhs = geometric_product(reverse(a.mv()), b.mv());
    Multivector rhs(a.mv().algebra());
    if (!a.is_zero() && !b.is_zero()) {
        const AngleBivector phi = oriented_angle_bivector(a, b, tol);
        rhs = a.norm() * b.norm() * exp_angle_bivector(phi);
    }
    return make_identity_result("reverse-product-exp", lhs, rhs,
                                tol.identity(), std::move(digest));
}

IdentityResult check_mixed_product_formula(const Blade& a, const Blade& b,
                                           const Tolerance& tol,
                                           std::string digest) {
    if (a.is_zero() || b.is_zero()) {
        throw rank_error("mixed product formula requires nonzero blades");
    }
    const Algebra alg = a.mv().algebra();
    const PrincipalData pd = principal_data(a, b, tol);
    const AngleBivector phi = oriented_angle_bivector_from(pd, alg);
    const Multivector expphi = exp_angle_bivector(phi);

    const Multivector lhs = geometric_product(reverse(a.mv()), b.mv());
    Multivector rhs(alg);
    if (pd.p <= pd.q) {
        rhs = a.norm() * b.norm() *
              geometric_product(expphi, unit_perp_blade(pd, alg, true));
    } else {
        rhs = a.norm() * b.norm() *
              geometric_product(expphi, reverse(unit_perp_blade(pd, alg, false)));
    }
    return make_identity_result("mixed-grade-product", lhs, rhs,
                                tol.identity(), std::move(digest));
}

std::vector<IdentityResult> check_subproduct_norms(const Blade& a,
                                                   const Blade& b,
                                                   const Tolerance& tol,
                                                   std::string digest) {
    const PrincipalData pd = principal_data(a, b, tol);
    const double asym_vw = asymmetric_from(pd);
    const double asym_wv = asymmetric_swapped_from(pd);
    const double comp = complementary_from(pd);
    const double max_sym = std::max(asym_vw, asym_wv);
    const double min_sym = std::min(asym_vw, asym_wv);
    const double nn = a.norm() * b.norm();
    const double eps = tol.identity();

    std::vector<IdentityResult> out;
    out.push_back(make_scalar_result(
        "scalar-product-max-sym", std::abs(scalar_product(a.mv(), b.mv())),
        nn * std::cos(max_sym), eps, digest));
    out.push_back(make_scalar_result(
        "left-contraction-asym", left_contraction(a.mv(), b.mv()).norm(),
        nn * std::cos(asym_vw), eps, digest));
    out.push_back(make_scalar_result(
        "right-contraction-asym", right_contraction(a.mv(), b.mv()).norm(),
        nn * std::cos(asym_wv), eps, digest));
    out.push_back(make_scalar_result("fat-dot-min-sym",
                                     fat_dot(a.mv(), b.mv()).norm(),
                                     nn * std::cos(min_sym), eps, digest));
    if (a.grade() != 0 && b.grade() != 0) {
        out.push_back(make_scalar_result(
            "hestenes-inner-min-sym", hestenes_inner(a.mv(), b.mv()).norm(),
            nn * std::cos(min_sym), eps, digest));
    } else {
        out.push_back(make_bool_result("hestenes-inner-min-sym", true,
                                       "skipped: scalar factor"));
    }
    out.push_back(make_scalar_result("outer-product-complementary",
                                     outer_product(a.mv(), b.mv()).norm(),
                                     nn * std::cos(comp), eps, digest));
    return out;
}

std::vector<IdentityResult> check_oriented_subproducts(const Blade& a,
                                                       const Blade& b,
                                                       const Tolerance& tol,
                                                       std::string digest) {
    const Algebra alg = a.mv().algebra();
    const PrincipalData pd = principal_data(a, b, tol);
    const double sign = static_cast<double>(pd.sign_ab);
    const double asym_vw = asymmetric_from(pd);
    const double asym_wv = asymmetric_swapped_from(pd);
    const double comp = complementary_from(pd);
    const double max_sym = std::max(asym_vw, asym_wv);
    const double nn = a.norm() * b.norm();
    const double eps = tol.identity();
    const Multivector ar = reverse(a.mv());

    std::vector<IdentityResult> out;
    out.push_back(make_scalar_result("oriented-scalar-product",
                                     scalar_product(ar, b.mv()),
                                     nn * sign * std::cos(max_sym), eps,
                                     digest));
    const Multivector b_perp = unit_perp_blade(pd, alg, true);
    out.push_back(make_identity_result(
        "oriented-left-contraction", left_contraction(ar, b.mv()),
        nn * sign * std::cos(asym_vw) * b_perp, eps, digest));
    const Multivector a_perp = unit_perp_blade(pd, alg, false);
    out.push_back(make_identity_result(
        "oriented-right-contraction", right_contraction(ar, b.mv()),
        nn * sign * std::cos(asym_wv) * reverse(a_perp), eps, digest));

    Multivector j(alg);
    if (pd.zero_count == 0) {
        Multivector acc = Multivector::scalar(alg, 1.0);
        if (pd.p <= pd.q) {
            for (int i = 0; i < pd.p; ++i) {
                acc = acc * Multivector::from_vector(alg, pd.orthoprincipal_e(alg, i));
            }
            for (int i = 0; i < pd.q; ++i) {
                acc = acc * Multivector::from_vector(
                                alg, pd.f_basis[static_cast<std::size_t>(i)]);
            }
        } else {
            for (int i = 0; i < pd.p; ++i) {
                acc = acc * Multivector::from_vector(
                                alg, pd.e_basis[static_cast<std::size_t>(i)]);
            }
            for (int i = 0; i < pd.q; ++i) {
                acc = acc * Multivector::from_vector(alg, pd.orthoprincipal_f(alg, i));
            }
        }
        j = acc;
    }
    out.push_back(make_identity_result("oriented-outer-product",
                                       outer_product(a.mv(), b.mv()),
                                       nn * sign * std::cos(comp) * j, eps,
                                       digest));
    return out;
}

std::vector<IdentityResult> check_commutator_suite(const Blade& a,
                                                   const Blade& b,
                                                   const Tolerance& tol,
                                                   std::string digest) {
    const Algebra alg = a.mv().algebra();
    const double eps = tol.identity();
    const Multivector p = a.mv() * b.mv();
    const Multivector q = b.mv() * a.mv();
    const Multivector box = anticommutator(a.mv(), b.mv());
    const Multivector cross = commutator(a.mv(), b.mv());

    std::vector<IdentityResult> out;
    out.push_back(
        make_identity_result("comm-anticomm-sum", box + cross, p, eps, digest));
    out.push_back(
        make_identity_result("comm-anticomm-diff", box - cross, q, eps, digest));
    out.push_back(make_scalar_result(
        "comm-anticomm-norm-split", box.norm_squared() + cross.norm_squared(),
        (p.norm_squared() + q.norm_squared()) / 2.0, eps, digest));
    out.push_back(make_identity_result("comm-pair-commutes",
                                       commutator(box, cross),
                                       Multivector(alg), eps, digest));
    out.push_back(make_scalar_result("comm-pair-scalar-orthogonal",
                                     scalar_product(box, cross), 0.0, eps,
                                     digest));
    out.push_back(make_identity_result(
        "comm-square-difference", box * box - cross * cross,
        Multivector::scalar(alg, a.square() * b.square()), eps, digest));
    out.push_back(make_scalar_result(
        "comm-norm-pythagoras", box.norm_squared() + cross.norm_squared(),
        a.norm() * a.norm() * b.norm() * b.norm(), eps, digest));

    if (!a.is_zero() && !b.is_zero()) {
        if (a.grade() == b.grade()) {
            const AngleBivector phi = oriented_angle_bivector(a, b, tol);
            const Multivector ep = exp_angle_bivector(phi);
            const Multivector em = exp_angle_bivector(phi.scaled(-1.0));
            const double nn = a.norm() * b.norm();
            const Multivector ar = reverse(a.mv());
            out.push_back(make_identity_result("anticommutator-cosh",
                                               anticommutator(ar, b.mv()),
                                               nn * 0.5 * (ep + em), eps,
                                               digest));
            out.push_back(make_identity_result("commutator-sinh",
                                               commutator(ar, b.mv()),
                                               nn * 0.5 * (ep - em), eps,
                                               digest));
        }

        // Grade partition through the orthogonal subblade: which of the two
        // products lands on which alternating grade block flips with the
        // parity of p(q-1), taking the smaller blade first.
        const bool swapped = a.grade() > b.grade();
        const Blade& small = swapped ? b : a;
        const Blade& large = swapped ? a : b;
        const PrincipalData pd = principal_data(small, large, tol);
        const Multivector large_proj = pd.sign_b * large.norm() *
                                       pd.f_proj_blade(alg);
        const Multivector large_perp = unit_perp_blade(pd, alg, true);
        const int parity = (small.grade() * (large.grade() - 1)) % 2;
        const Multivector cross_small = commutator(small.mv(), large_proj);
        const Multivector box_small = anticommutator(small.mv(), large_proj);
        Multivector cross_pred =
            outer_product(parity == 0 ? cross_small : box_small, large_perp);
        Multivector box_pred =
            outer_product(parity == 0 ? box_small : cross_small, large_perp);
        if (swapped) cross_pred *= -1.0;  // the commutator is antisymmetric
        out.push_back(make_identity_result("commutator-grade-partition", cross,
                                           cross_pred, eps, digest));
        out.push_back(make_identity_result("anticommutator-grade-partition",
                                           box, box_pred, eps, digest));
    }
    return out;
}

IdentityResult check_vanishing_conditions(const Blade& a, const Blade& b,
                                          const Tolerance& tol,
                                          std::string digest) {
    const bool swapped = a.grade() > b.grade();
    const Blade& small = swapped ? b : a;
    const Blade& large = swapped ? a : b;
    const PrincipalData pd = principal_data(small, large, tol);

    int right = 0;
    bool extreme_only = true;
    for (double th : pd.thetas) {
        if (is_right_angle(th)) {
            ++right;
        } else if (!is_zero_angle(th)) {
            extreme_only = false;
        }
    }
    const int parity = (small.grade() * (large.grade() - 1)) % 2;
    const bool cross_should_vanish =
        extreme_only && (parity == 0 ? right % 2 == 0 : right % 2 == 1);
    const bool box_should_vanish =
        extreme_only && (parity == 0 ? right % 2 == 1 : right % 2 == 0);

    const double scale =
        std::max(1.0, a.norm() * b.norm());
    const bool cross_vanishes =
        commutator(a.mv(), b.mv()).norm() <= vanish_eps * scale;
    const bool box_vanishes =
        anticommutator(a.mv(), b.mv()).norm() <= vanish_eps * scale;

    bool agree = (cross_vanishes == cross_should_vanish) &&
                 (box_vanishes == box_should_vanish);

    if (small.grade() == large.grade() && !small.is_zero() && !large.is_zero()) {
        const AngleBivector phi = oriented_angle_bivector(small, large, tol);
        const Multivector ep = exp_angle_bivector(phi);
        const Multivector em = exp_angle_bivector(phi.scaled(-1.0));
        const bool cosh_vanishes = (0.5 * (ep + em)).norm() <= vanish_eps;
        const bool sinh_vanishes = (0.5 * (ep - em)).norm() <= vanish_eps;
        agree = agree && (cosh_vanishes == (extreme_only && right % 2 == 1));
        agree = agree && (sinh_vanishes == (extreme_only && right % 2 == 0));
    }
    return make_bool_result("commutation-predicate", agree, std::move(digest));
}

std::vector<IdentityResult> check_duality(const Blade& a, const Blade& b,
                                          const Tolerance& tol,
                                          std::string digest) {
    const Algebra alg = a.mv().algebra();
    const double eps = tol.identity();
    const Multivector j_full = Multivector::basis_blade(
        alg, static_cast<std::uint32_t>(alg.coeff_count()) - 1, 1.0);

    std::vector<IdentityResult> out;
    out.push_back(make_identity_result(
        "dual-product", dual(a.mv() * b.mv(), j_full, tol),
        a.mv() * dual(b.mv(), j_full, tol), eps, digest));
    out.push_back(make_identity_result(
        "dual-outer-to-contraction", dual(outer_product(a.mv(), b.mv()), j_full, tol),
        left_contraction(a.mv(), dual(b.mv(), j_full, tol)), eps, digest));
    out.push_back(make_identity_result(
        "dual-contraction-to-outer",
        dual(left_contraction(a.mv(), b.mv()), j_full, tol),
        outer_product(a.mv(), dual(b.mv(), j_full, tol)), eps, digest));

    if (a.is_zero() || b.is_zero() || a.grade() != b.grade()) {
        out.push_back(make_bool_result("dual-exp-complement", true,
                                       "skipped: needs equal nonzero grades"));
        return out;
    }
    const PrincipalData pd = principal_data(a, b, tol);
    if (pd.zero_count != 0 || pd.m == 0) {
        out.push_back(make_bool_result("dual-exp-complement", true,
                                       "skipped: spans intersect"));
        return out;
    }

    // Dual w.r.t. the product of rotation planes: exponentials of the
    // bivector to W and to its orthogonal complement swap sines and
    // cosines componentwise.
    Multivector j_planes = Multivector::scalar(alg, 1.0);
    std::vector<AngleTerm> comp_terms;
    for (int i = 0; i < pd.m; ++i) {
        const Multivector plane = pd.principal_plane(alg, i);
        j_planes = j_planes * plane;
        const double comp_angle = half_pi - pd.theta(i);
        if (!is_zero_angle(comp_angle)) {
            comp_terms.push_back({comp_angle, -plane});
        }
    }
    // Ascending angles keep the complement bivector in normal form.
    std::reverse(comp_terms.begin(), comp_terms.end());
    const AngleBivector phi = angle_bivector_from(pd, alg);
    const AngleBivector phi_comp(alg, comp_terms, false);
    const Multivector lhs = dual(exp_angle_bivector(phi), j_planes, tol);
    const Multivector rhs = exp_angle_bivector(phi_comp);
    out.push_back(
        make_identity_result("dual-exp-complement", lhs, rhs, eps, digest));

    double worst = 0.0;
    const Multivector ep = exp_angle_bivector(phi);
    const Multivector ec = exp_angle_bivector(phi_comp);
    for (int k = 0; k <= pd.m; ++k) {
        const Multivector part =
            dual(grade_project(ep, 2 * k), j_planes, tol);
        worst = std::max(worst,
                         distance(part, grade_project(ec, 2 * (pd.m - k))));
    }
    IdentityResult comp{};
    comp.name = "dual-exp-componentwise";
    comp.lhs_norm = ep.norm();
    comp.rhs_norm = ec.norm();
    comp.residual = worst;
    comp.passed = worst <= eps;
    comp.inputs_digest = digest;
    out.push_back(std::move(comp));

    // Oriented version through the full pipeline: dualize B, recompute.
    const Blade b_dual = certify_blade(dual(b.mv(), j_planes, tol), tol);
    const AngleBivector phi_ab = oriented_angle_bivector_from(pd, alg);
    const AngleBivector phi_abd = oriented_angle_bivector(a, b_dual, tol);
    out.push_back(make_identity_result(
        "dual-exp-oriented", dual(exp_angle_bivector(phi_ab), j_planes, tol),
        exp_angle_bivector(phi_abd), eps, digest));
    return out;
}

IdentityResult check_product_reconstruction(const Blade& a, const Blade& b,
                                            const Tolerance& tol,
                                            std::string digest) {
    if (a.grade() != b.grade()) {
        throw grade_error("product reconstruction needs equal grades");
    }
    if (a.is_zero() || b.is_zero()) {
        throw rank_error("product reconstruction requires nonzero blades");
    }
    const Algebra alg = a.mv().algebra();
    const Multivector ab = a.mv() * b.mv();
    const Multivector b_inv = reverse(b.mv()) / (b.norm() * b.norm());

    double worst = distance(ab * b_inv, a.mv());

    const PrincipalData pd = principal_data(a, b, tol);
    const AngleBivector phi = angle_bivector_from(pd, alg);
    const auto& terms = phi.terms();
    const int k = static_cast<int>(terms.size());
    // Group the coordinate projections of A by the grade their plane
    // product contributes to AB.
    for (int size = 0; size <= k; ++size) {
        Multivector projected_sum(alg);
        for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << k);
             ++subset) {
            if (std::popcount(subset) != size) continue;
            Multivector plane_product = Multivector::scalar(alg, 1.0);
            for (int j = 0; j < k; ++j) {
                if (subset & (std::uint32_t{1} << j)) {
                    plane_product =
                        plane_product * terms[static_cast<std::size_t>(j)].plane;
                }
            }
            const Blade coord =
                certify_blade(plane_product * b.mv(), tol);
            projected_sum += project_blade(a, coord.subspace());
        }
        const Multivector component = grade_project(ab, 2 * size) * b_inv;
        worst = std::max(worst, distance(component, projected_sum));
    }

    IdentityResult r;
    r.name = "product-reconstruction";
    r.lhs_norm = a.norm();
    r.rhs_norm = a.norm();
    r.residual = worst;
    r.passed = worst <= tol.identity() * std::max(1.0, a.norm());
    r.inputs_digest = std::move(digest);
    return r;
}

std::vector<IdentityResult> check_grassmann_products(const Blade& a,
                                                     const Blade& b,
                                                     const Tolerance& tol,
                                                     std::string digest) {
    const double eps = tol.identity();
    const PODecomposition po = po_decompose(a, b, tol);
    const PrincipalData& pd = po.principal;
    const double nn = a.norm() * b.norm();
    const double sign = static_cast<double>(pd.sign_ab);
    const double asym_vw = asymmetric_from(pd);
    const double asym_wv = asymmetric_swapped_from(pd);
    const double max_sym = std::max(asym_vw, asym_wv);
    const double comp = complementary_from(pd);

    const Multivector ar = reverse(a.mv());
    const Multivector contraction = left_contraction(ar, b.mv());

    std::vector<IdentityResult> out;
    out.push_back(make_scalar_result("grassmann-inner-max-sym",
                                     scalar_product(ar, b.mv()),
                                     nn * sign * std::cos(max_sym), eps,
                                     digest));
    out.push_back(make_scalar_result("grassmann-outer-complementary",
                                     outer_product(a.mv(), b.mv()).norm(),
                                     nn * std::cos(comp), eps, digest));
    out.push_back(make_identity_result(
        "grassmann-contraction-split", contraction,
        scalar_product(ar, po.b_proj.mv()) * po.b_perp.mv(), eps, digest));
    out.push_back(make_identity_result(
        "grassmann-contraction-oriented", contraction,
        nn * sign * std::cos(asym_vw) * po.b_perp.mv(), eps, digest));
    out.push_back(make_identity_result(
        "grassmann-perp-recovery", po.b_perp.mv(),
        left_contraction(reverse(po.b_proj.mv()), b.mv()) /
            (b.norm() * b.norm()),
        eps, digest));
    const double p_ba = project_blade(a, Subspace(pd.n, pd.f_basis)).norm();
    out.push_back(make_identity_result(
        "grassmann-contraction-projection", contraction,
        sign * p_ba * b.norm() * po.b_perp.mv(), eps, digest));

    const bool contraction_zero =
        contraction.norm() <= vanish_eps * std::max(1.0, nn);
    const bool po_flag =
        partially_orthogonal(a.subspace(), b.subspace(), tol);
    out.push_back(make_bool_result("grassmann-contraction-vanishing",
                                   contraction_zero == po_flag, digest));
    return out;
}

std::vector<IdentityResult> check_hyperbolic_properties(const Multivector& h,
                                                        const Tolerance& tol,
                                                        std::string digest) {
    const Algebra alg = h.algebra();
    const double eps = tol.identity();
    const Multivector ch = mv_cosh(h, tol);
    const Multivector sh = mv_sinh(h, tol);
    const Multivector ep = mv_exp(h, tol);
    const Multivector em = mv_exp(-h, tol);

    std::vector<IdentityResult> out;
    out.push_back(make_identity_result("cosh-sinh-exp-sum", ch + sh, ep, eps,
                                       digest));
    out.push_back(make_identity_result("cosh-sinh-exp-diff", ch - sh, em, eps,
                                       digest));
    out.push_back(
        make_identity_result("cosh-even", mv_cosh(-h, tol), ch, eps, digest));
    out.push_back(
        make_identity_result("sinh-odd", mv_sinh(-h, tol), -sh, eps, digest));
    out.push_back(make_identity_result("cosh-reversion", reverse(ch),
                                       mv_cosh(reverse(h), tol), eps, digest));
    out.push_back(make_identity_result("sinh-reversion", reverse(sh),
                                       mv_sinh(reverse(h), tol), eps, digest));
    out.push_back(make_identity_result("cosh-sq-minus-sinh-sq",
                                       ch * ch - sh * sh,
                                       Multivector::scalar(alg, 1.0), eps,
                                       digest));

    const int p = grade_of(h, tol.structural());
    if (h.norm() > 0.0 && p > 0) {
        const int r = p % 4;
        double off_support = 0.0;
        for (int g = 0; g <= alg.dim(); ++g) {
            const double cg = grade_project(ch, g).norm();
            const double sg = grade_project(sh, g).norm();
            if (g % 4 != 0) off_support = std::max(off_support, cg);
            if ((g - r) % 4 != 0) off_support = std::max(off_support, sg);
        }
        IdentityResult support;
        support.name = "hyperbolic-grade-support";
        support.lhs_norm = ch.norm();
        support.rhs_norm = sh.norm();
        support.residual = off_support;
        support.passed = off_support <= eps;
        support.inputs_digest = digest;
        out.push_back(std::move(support));

        if (r != 0) {
            out.push_back(make_scalar_result("cosh-sinh-scalar-orthogonal",
                                             scalar_product(ch, sh), 0.0, eps,
                                             digest));
        }
        const double c2 = ch.norm_squared();
        const double s2 = sh.norm_squared();
        if (r == 0 || r == 1) {
            out.push_back(make_scalar_result("hyperbolic-norm-difference",
                                             c2 - s2, 1.0, eps, digest));
            const double rhs = r == 0
                                   ? (ep.norm_squared() + em.norm_squared()) / 2.0
                                   : ep.norm_squared();
            out.push_back(make_scalar_result("hyperbolic-norm-sum", c2 + s2,
                                             rhs, eps, digest));
            out.push_back(make_bool_result("cosh-norm-at-least-one",
                                           std::sqrt(c2) >= 1.0 - eps, digest));
            if (r == 1) {
                out.push_back(make_scalar_result("exp-norm-symmetric",
                                                 ep.norm(), em.norm(), eps,
                                                 digest));
            }
        } else {
            out.push_back(make_scalar_result("hyperbolic-norm-sum", c2 + s2,
                                             1.0, eps, digest));
            // the difference equals the scalar part of exp(2H), computed
            // here as <exp(H) exp(H)>_0
            out.push_back(make_scalar_result("hyperbolic-norm-difference",
                                             c2 - s2, (ep * ep).scalar_part(),
                                             eps, digest));
            out.push_back(make_scalar_result("exp-unit-norm", ep.norm(), 1.0,
                                             eps, digest));
        }
    }
    return out;
}

IdentityResult check_hyperbolic_commuting(const Multivector& m,
                                          const Multivector& n,
                                          const Tolerance& tol,
                                          std::string digest) {
    if (commutator(m, n).norm() > tol.structural() * std::max(1.0, m.norm() * n.norm())) {
        return make_bool_result("cosh-sinh-commute", true,
                                "skipped: operands do not commute");
    }
    return make_identity_result(
        "cosh-sinh-commute", commutator(mv_cosh(m, tol), mv_sinh(n, tol)),
        Multivector(m.algebra()), tol.identity(), std::move(digest));
}

namespace {

// Splits a bivector into commuting weighted planes through the skew map
// v -> v _| T: eigenvectors of its square pair up into invariant planes.
struct PlaneSplit {
    std::vector<double> weights;          // tan(theta), descending
    std::vector<Multivector> planes;      // unit simple bivectors
};

PlaneSplit split_bivector(const Multivector& t) {
    const Algebra alg = t.algebra();
    const int n = alg.dim();
    lin::Mat k(n, n);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::uint32_t mask =
                (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
            const double c = t[mask];
            k.at(j, i) = c;
            k.at(i, j) = -c;
        }
    }
    const lin::Mat s = lin::matmul(k.transposed(), k);
    const lin::EigenResult eig = lin::sym_eigen(s);

    PlaneSplit out;
    std::vector<lin::Vec> used;
    const double scale = t.norm();
    for (int col = 0; col < n; ++col) {
        const double lambda = eig.values[static_cast<std::size_t>(col)];
        if (lambda <= 1e-12 * std::max(1.0, scale * scale)) continue;
        lin::Vec u(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) u[static_cast<std::size_t>(r)] = eig.vectors.at(r, col);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& w : used) lin::axpy(u, -lin::dot(w, u), w);
        }
        if (lin::norm(u) < 0.5) continue;  // plane already consumed
        u = lin::scaled(u, 1.0 / lin::norm(u));
        const double weight = std::sqrt(lambda);
        lin::Vec v(static_cast<std::size_t>(n), 0.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                v[static_cast<std::size_t>(r)] += k.at(r, c) * u[static_cast<std::size_t>(c)] / weight;
        Multivector plane = outer_product(Multivector::from_vector(alg, u),
                                          Multivector::from_vector(alg, v));
        plane /= plane.norm();
        out.weights.push_back(weight);
        out.planes.push_back(std::move(plane));
        used.push_back(u);
        used.push_back(v);
    }
    return out;
}

// Factor extraction that renormalizes instead of rejecting, for grade
// components that are blades only up to rounding.
Blade snap_to_blade(const Multivector& m, const Tolerance& tol) {
    try {
        return certify_blade(m, tol);
    } catch (const not_a_blade_error&) {
        return certify_blade(m, Tolerance(1e-4, tol.identity()));
    }
}

} // namespace

HitzerRecovery hitzer_recover(const Multivector& product, int p, int q,
                              const Tolerance& tol) {
    if (p > q || p < 0) {
        throw malformed_product_error("grades must satisfy 0 <= p <= q");
    }
    const Algebra alg = product.algebra();
    const double scale = product.norm();
    if (scale == 0.0) {
        throw malformed_product_error("zero product carries no angle data");
    }
    const std::vector<int> grades = grades_present(product, tol.structural());
    for (int g : grades) {
        if ((g - (p + q)) % 2 != 0) {
            throw malformed_product_error("grade support has the wrong parity");
        }
    }
    const int lowest = grades.front();
    const int highest = grades.back();
    const int last_acute = (p + q - lowest) / 2;
    const int zero_count = (p + q - highest) / 2;
    if (zero_count < 0 || last_acute > p || zero_count > last_acute) {
        throw malformed_product_error("grade ladder does not fit any blade product");
    }

    const Multivector low = grade_project(product, lowest);
    const Blade low_blade = snap_to_blade(low, tol);
    HitzerRecovery rec{zero_count,
                       last_acute,
                       {},
                       {},
                       low_blade.norm() > 0.0
                           ? low_blade.mv() / low_blade.norm()
                           : Multivector::scalar(alg, 1.0)};

    std::vector<double> open_angles;
    if (last_acute > zero_count) {
        const Multivector second = grade_project(product, lowest + 2);
        const Multivector ratio =
            second * blade_inverse(low_blade).mv();
        const Multivector t = grade_project(ratio, 2);
        if (distance(ratio, t) > 1e-6 * std::max(1.0, ratio.norm())) {
            throw malformed_product_error(
                "second component over the lowest one is not a bivector");
        }
        const PlaneSplit split = split_bivector(t);
        if (static_cast<int>(split.weights.size()) != last_acute - zero_count) {
            throw malformed_product_error(
                "bivector split does not match the grade ladder");
        }
        // Weights come out descending, so walking backwards gives the
        // angles in ascending order with their planes aligned.
        for (std::size_t i = split.weights.size(); i-- > 0;) {
            open_angles.push_back(std::atan(split.weights[i]));
            rec.planes.push_back(split.planes[i]);
        }
    }

    rec.thetas.assign(static_cast<std::size_t>(zero_count), 0.0);
    rec.thetas.insert(rec.thetas.end(), open_angles.begin(), open_angles.end());
    rec.thetas.insert(rec.thetas.end(),
                      static_cast<std::size_t>(p - last_acute), half_pi);
    return rec;
}

} // namespace ga
