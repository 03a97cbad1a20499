#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ga/principal.hpp"
#include "ga/random_gen.hpp"

using namespace ga;

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

// Oracle: d = p + q - dim(V + W), with dim(V + W) as the rank of the
// stacked frames.
int intersection_dim_oracle(const Subspace& v, const Subspace& w) {
    std::vector<lin::Vec> stacked = v.frame();
    stacked.insert(stacked.end(), w.frame().begin(), w.frame().end());
    const int joint = lin::orthonormalize(stacked, 1e-9);
    return v.dim() + w.dim() - joint;
}

Blade plane_pair_a(Algebra alg) {
    const double s10 = std::sqrt(10.0), s5 = std::sqrt(5.0);
    const Subspace s = Subspace::from_vectors(
        4, {{1 / s10, 0, 3 / s10, 0}, {0, 2 / s5, 0, 1 / s5}});
    return blade_from_frame(s, 1.0, alg);
}

Blade plane_pair_b(Algebra alg) {
    const Subspace s = Subspace::from_vectors(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    return blade_from_frame(s, 1.0, alg);
}

} // namespace

TEST_CASE("principal data of identical planes") {
    Algebra alg(3);
    const Subspace v = Subspace::from_vectors(3, {{1, 0, 0}, {0, 1, 0}});
    const Blade a = blade_from_frame(v, 1.0, alg);
    const PrincipalData pd = principal_data(a, a);
    REQUIRE(pd.m == 2);
    CHECK(pd.theta(0) == doctest::Approx(0.0));
    CHECK(pd.theta(1) == doctest::Approx(0.0));
    CHECK(pd.zero_count == 2);
    for (int i = 0; i < 2; ++i) {
        lin::Vec diff = pd.e_basis[static_cast<std::size_t>(i)];
        lin::axpy(diff, -1.0, pd.f_basis[static_cast<std::size_t>(i)]);
        CHECK(lin::norm(diff) < 1e-12);
    }
}

TEST_CASE("principal data of the worked plane pair") {
    Algebra alg(4);
    const Blade a = plane_pair_a(alg);
    const Blade b = plane_pair_b(alg);
    const PrincipalData pd = principal_data(a, b);
    REQUIRE(pd.m == 2);
    CHECK(pd.theta(0) ==
          doctest::Approx(std::acos(2.0 / std::sqrt(5.0))).epsilon(1e-12));
    CHECK(pd.theta(1) ==
          doctest::Approx(std::acos(1.0 / std::sqrt(10.0))).epsilon(1e-12));
    CHECK(pd.zero_count == 0);
    CHECK(pd.last_acute == 2);
    CHECK(pd.sign_ab == 1);

    // The defining cross-Gram relation.
    for (int i = 0; i < pd.p; ++i) {
        for (int j = 0; j < pd.q; ++j) {
            const double expected =
                i == j && i < pd.m ? std::cos(pd.theta(i)) : 0.0;
            CHECK(lin::dot(pd.e_basis[static_cast<std::size_t>(i)],
                           pd.f_basis[static_cast<std::size_t>(j)]) ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("a shared line with two right angles") {
    // E = x1 x2 x3 and F = x1 x4 x5 share exactly the first axis.
    Algebra alg(5);
    const Subspace v = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
    const Subspace w = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    const PrincipalData pd = principal_data(blade_from_frame(v, 1.0, alg),
                                            blade_from_frame(w, 1.0, alg));
    REQUIRE(pd.m == 3);
    CHECK(pd.theta(0) == doctest::Approx(0.0));
    CHECK(pd.theta(1) == doctest::Approx(half_pi));
    CHECK(pd.theta(2) == doctest::Approx(half_pi));
    CHECK(pd.zero_count == 1);
    CHECK(pd.last_acute == 1);
}

TEST_CASE("reconstruction and cross-Gram residuals on random pairs") {
    Rng rng(53);
    for (int t = 0; t < 150; ++t) {
        const int n = rng.uniform_int(2, 7);
        const int p = rng.uniform_int(1, std::min(4, n));
        const int q = rng.uniform_int(1, std::min(4, n));
        const Blade a = random_blade(rng, n, p);
        const Blade b = random_blade(rng, n, q);
        const Algebra alg(n);
        const PrincipalData pd = principal_data(a, b);

        for (int i = 0; i < pd.p; ++i) {
            for (int j = 0; j < pd.q; ++j) {
                const double expected =
                    i == j && i < pd.m ? std::cos(pd.theta(i)) : 0.0;
                CHECK(std::abs(lin::dot(pd.e_basis[static_cast<std::size_t>(i)],
                                        pd.f_basis[static_cast<std::size_t>(j)]) -
                               expected) < 1e-10);
            }
        }

        // The principal decomposition reproduces both blades.
        const Multivector a_rebuilt =
            pd.sign_a * a.norm() * pd.e_blade(alg);
        CHECK(distance(a_rebuilt, a.mv()) < 1e-10 * std::max(1.0, a.norm()));
        const Multivector b_rebuilt =
            pd.sign_b * b.norm() * pd.f_blade(alg);
        CHECK(distance(b_rebuilt, b.mv()) < 1e-10 * std::max(1.0, b.norm()));

        // Normal form of the signs.
        CHECK(pd.sign_a == 1);

        // Zero-angle count against the stacked-frame rank oracle.
        CHECK(pd.zero_count ==
              intersection_dim_oracle(a.subspace(), b.subspace()));
    }
}

TEST_CASE("relative orientation") {
    Algebra alg(4);
    const Blade b = plane_pair_b(alg);

    SUBCASE("same blade") {
        const PrincipalData pd = principal_data(b, b);
        const OrientationSign s = relative_orientation(pd, b, b);
        CHECK(s.sign == 1);
        CHECK(s.determinate);
    }
    SUBCASE("opposite orientation") {
        const Blade nb = certify_blade(-b.mv());
        const PrincipalData pd = principal_data(b, nb);
        const OrientationSign s = relative_orientation(pd, b, nb);
        CHECK(s.sign == -1);
        CHECK(s.determinate);
    }
    SUBCASE("worked pair is positively oriented") {
        const Blade a = plane_pair_a(alg);
        const PrincipalData pd = principal_data(a, b);
        const OrientationSign s = relative_orientation(pd, a, b);
        CHECK(s.sign == 1);
        CHECK(s.determinate);
    }
    SUBCASE("orthogonal planes have basis-dependent orientation") {
        const Subspace w = Subspace::from_vectors(4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
        const Blade c = blade_from_frame(w, 1.0, alg);
        const PrincipalData pd = principal_data(b, c);
        const OrientationSign s = relative_orientation(pd, b, c);
        CHECK_FALSE(s.determinate);
    }
}

TEST_CASE("partial orthogonality") {
    const Subspace plane = Subspace::from_vectors(3, {{1, 0, 0}, {0, 1, 0}});
    const Subspace line_in = Subspace::from_vectors(3, {{1, 0, 0}});
    const Subspace line_out = Subspace::from_vectors(3, {{0, 0, 1}});

    CHECK(partially_orthogonal(plane, line_in));       // dim V > dim W
    CHECK_FALSE(partially_orthogonal(line_in, plane)); // contained line
    CHECK(partially_orthogonal(line_out, plane));      // right angle

    // For equal dimensions the relation is symmetric, and coincides with
    // the vanishing of the blade pairing.
    Rng rng(59);
    for (int t = 0; t < 60; ++t) {
        const int n = rng.uniform_int(2, 6);
        const int p = rng.uniform_int(1, std::min(3, n));
        const Blade a = random_blade(rng, n, p);
        const Blade b = random_blade(rng, n, p);
        const bool vw = partially_orthogonal(a.subspace(), b.subspace());
        const bool wv = partially_orthogonal(b.subspace(), a.subspace());
        CHECK(vw == wv);
        const double pairing = std::abs(scalar_product(a.mv(), b.mv()));
        CHECK(vw == (pairing < 1e-10 * a.norm() * b.norm()));
    }
}

TEST_CASE("a five-dimensional pair with one common axis is partially orthogonal") {
    const Subspace v = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
    const Subspace w = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    CHECK(partially_orthogonal(v, w));
}

TEST_CASE("projective-orthogonal decomposition") {
    SUBCASE("equal grades split trivially") {
        Algebra alg(4);
        const Blade a = plane_pair_a(alg);
        const Blade b = plane_pair_b(alg);
        const PODecomposition po = po_decompose(a, b);
        CHECK(distance(po.b_proj.mv(), b.mv()) < 1e-12);
        CHECK(po.b_perp.grade() == 0);
        CHECK(po.b_perp.mv()[0] == doctest::Approx(1.0));
        CHECK(po.w_perp.dim() == 0);
    }
    SUBCASE("the 2-versus-4 worked example") {
        Algebra alg(6);
        const double r3 = std::sqrt(3.0) / 2.0;
        const Subspace va = Subspace::from_vectors(
            6, {{r3, 0, 0, 0, 0.5, 0}, {0, 0, 0, 0, 0, 1}});
        const Subspace wb = Subspace::from_vectors(
            6, {{1, 0, 0, 0, 0, 0},
                {0, 1, 0, 0, 0, 0},
                {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 1, 0, 0}});
        const Blade a = blade_from_frame(va, 1.0, alg);
        const Blade b = blade_from_frame(wb, 1.0, alg);
        const PODecomposition po = po_decompose(a, b);

        // B_P spans f1, f2 and B_perp = f3 f4.
        CHECK(po.b_proj.grade() == 2);
        CHECK(po.b_perp.grade() == 2);
        CHECK(po.b_perp.mv()[0b001100] == doctest::Approx(1.0).epsilon(1e-12));
        const Subspace f12 = Subspace::from_vectors(
            6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}});
        CHECK(f12.containment_residual(po.w_proj) < 1e-10);

        // B = B_P ^ B_perp.
        CHECK(distance(outer_product(po.b_proj.mv(), po.b_perp.mv()), b.mv()) <
              1e-10);
    }
    SUBCASE("a vector completely orthogonal to a plane still splits consistently") {
        // the projective part is then basis dependent, but the product of
        // the split always rebuilds the blade
        Algebra alg(3);
        const Blade a = certify_blade(Multivector::basis_vector(alg, 0));
        const Blade b = certify_blade(Multivector::basis_blade(alg, 0b110));
        const PODecomposition po = po_decompose(a, b);
        CHECK(approx_equal(outer_product(po.b_proj.mv(), po.b_perp.mv()),
                           b.mv(), 1e-12));
        CHECK(po.w_proj.dim() == 1);
    }
    SUBCASE("the split multiplies back for random mixed grades") {
        Rng rng(61);
        for (int t = 0; t < 100; ++t) {
            const int n = rng.uniform_int(2, 7);
            const int p = rng.uniform_int(1, std::min(4, n));
            const int q = rng.uniform_int(1, std::min(4, n));
            const Blade a = random_blade(rng, n, p);
            const Blade b = random_blade(rng, n, q);
            const PODecomposition po = po_decompose(a, b);
            CHECK(approx_equal(outer_product(po.b_proj.mv(), po.b_perp.mv()),
                               b.mv(), 1e-9));
            // every factor of B_perp is orthogonal to [A] and to [B_P]
            for (const auto& f : po.b_perp.factors()) {
                CHECK(lin::norm(a.subspace().project(f)) < 1e-9);
                CHECK(lin::norm(po.w_proj.project(f)) < 1e-9);
            }
            // angle functionals agree between B and B_P
            const PrincipalData full = po.principal;
            if (!po.b_proj.is_zero()) {
                const PrincipalData proj_pd = principal_data(a, po.b_proj);
                REQUIRE(proj_pd.m == full.m);
                for (int i = 0; i < full.m; ++i) {
                    CHECK(std::abs(proj_pd.theta(i) - full.theta(i)) < 1e-9);
                }
            }
        }
    }
}
