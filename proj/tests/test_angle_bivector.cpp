#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ga/angle_bivector.hpp"
#include "ga/random_gen.hpp"

using namespace ga;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = pi / 2.0;

// The shared-line configuration: E = x1 x2 x3, F = x1 x4 x5.
struct SharedLine {
    Algebra alg{5};
    Subspace v = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
    Subspace w = Subspace::from_vectors(
        5, {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    Blade e = blade_from_frame(v, 1.0, alg);
    Blade f = blade_from_frame(w, 1.0, alg);
};

Multivector vec(Algebra alg, const lin::Vec& v) {
    return Multivector::from_vector(alg, v);
}

// Oracle: the per-vector geodesic formula. Each principal pair moves as
// f_i(t) = cos(t theta_i) e_i + sin(t theta_i) f_i_perp, with f_i_perp
// the unit component of f_i orthogonal to the source subspace.
Multivector geodesic_frame_oracle(const PrincipalData& pd, Algebra alg,
                                  double t) {
    Multivector acc = Multivector::scalar(alg, 1.0);
    for (int i = 0; i < pd.p; ++i) {
        lin::Vec fi = lin::scaled(pd.e_basis[static_cast<std::size_t>(i)],
                                  std::cos(t * pd.theta(i)));
        if (!is_zero_angle(pd.theta(i))) {
            lin::axpy(fi, std::sin(t * pd.theta(i)),
                      pd.orthoprincipal_f(alg, i));
        }
        acc = outer_product(acc, vec(alg, fi));
    }
    return acc;
}

} // namespace

TEST_CASE("angle bivector of identical subspaces vanishes") {
    const Subspace v = Subspace::from_vectors(3, {{1, 0, 0}, {0, 1, 0}});
    const AngleBivector phi = angle_bivector(v, v);
    CHECK(phi.terms().empty());
    CHECK(phi.as_multivector().norm() == 0.0);
    CHECK(geodesic_length(phi) == 0.0);
    CHECK(distance(exp_angle_bivector(phi),
                   Multivector::scalar(Algebra(3), 1.0)) == 0.0);
}

TEST_CASE("shared-line configuration") {
    SharedLine s;
    const AngleBivector phi = angle_bivector(s.v, s.w);

    SUBCASE("two right-angle planes, ignoring the common line") {
        REQUIRE(phi.terms().size() == 2);
        CHECK(phi.terms()[0].theta == doctest::Approx(half_pi));
        CHECK(phi.terms()[1].theta == doctest::Approx(half_pi));
        Multivector expected(s.alg);
        expected[0b01010] = half_pi;  // x2 ^ x4
        expected[0b10100] = half_pi;  // x3 ^ x5
        CHECK(approx_equal(phi.as_multivector(), expected, 1e-12));
        CHECK(phi.basis_dependent());  // top angle is right
    }
    SUBCASE("closed-form exponential and half-angle rotor") {
        const Multivector x2 = Multivector::basis_vector(s.alg, 1);
        const Multivector x3 = Multivector::basis_vector(s.alg, 2);
        const Multivector f2 = Multivector::basis_vector(s.alg, 3);
        const Multivector f3 = Multivector::basis_vector(s.alg, 4);
        const Multivector expected_exp = x2 * f2 * x3 * f3;
        CHECK(approx_equal(exp_angle_bivector(phi), expected_exp, 1e-12));
        CHECK(approx_equal(mv_exp(phi.as_multivector()), expected_exp, 1e-9));

        Multivector expected_half = Multivector::scalar(s.alg, 1.0);
        expected_half += x2 * f2;
        expected_half += x3 * f3;
        expected_half += x2 * f2 * x3 * f3;
        expected_half /= 2.0;
        CHECK(approx_equal(exp_angle_bivector(phi.scaled(0.5)), expected_half,
                           1e-12));
    }
    SUBCASE("rotor transport carries E to F, one-sided differs on vectors") {
        const Blade moved = rotor_transport(s.e, phi);
        CHECK(approx_equal(moved.mv(), s.f.mv(), 1e-12));

        // two-sided action on x2 gives f2
        const Multivector half = exp_angle_bivector(phi.scaled(0.5));
        const Multivector x2 = Multivector::basis_vector(s.alg, 1);
        const Multivector two_sided = reverse(half) * x2 * half;
        CHECK(approx_equal(two_sided, Multivector::basis_vector(s.alg, 3),
                           1e-12));
        // but the one-sided product keeps extra factors
        const Multivector one_sided = x2 * exp_angle_bivector(phi);
        CHECK(grade_of(one_sided, 1e-10) == 3);
    }
    SUBCASE("an alternate principal basis flips the exponential sign") {
        const double r = 1.0 / std::sqrt(2.0);
        const Multivector x2 = Multivector::basis_vector(s.alg, 1);
        const Multivector x3 = Multivector::basis_vector(s.alg, 2);
        const Multivector f2p = vec(s.alg, {0, 0, 0, r, r});
        const Multivector f3p = vec(s.alg, {0, 0, 0, r, -r});
        std::vector<AngleTerm> terms;
        terms.push_back({half_pi, outer_product(x2, f2p)});
        terms.push_back({half_pi, outer_product(x3, f3p)});
        const AngleBivector phi_alt(s.alg, terms, false);

        CHECK(approx_equal(exp_angle_bivector(phi_alt),
                           -exp_angle_bivector(phi), 1e-12));
        const Blade moved = rotor_transport(s.e, phi_alt);
        CHECK(approx_equal(moved.mv(), -s.f.mv(), 1e-12));
    }
    SUBCASE("oriented variant with the alternate basis restores the sign") {
        // with the alternate basis the relative orientation flips, and the
        // adjusted top angle restores exp(phi) exactly
        const double r = 1.0 / std::sqrt(2.0);
        const Multivector x2 = Multivector::basis_vector(s.alg, 1);
        const Multivector x3 = Multivector::basis_vector(s.alg, 2);
        const Multivector f2p = vec(s.alg, {0, 0, 0, r, r});
        const Multivector f3p = vec(s.alg, {0, 0, 0, r, -r});
        std::vector<AngleTerm> terms;
        terms.push_back({half_pi, outer_product(x2, f2p)});
        terms.push_back({half_pi, -outer_product(x3, f3p)});
        const AngleBivector phi_oriented(s.alg, terms, true);
        const AngleBivector phi_ef = oriented_angle_bivector(s.e, s.f);
        CHECK(approx_equal(exp_angle_bivector(phi_oriented),
                           exp_angle_bivector(phi_ef), 1e-12));
    }
}

TEST_CASE("oriented bivector basics") {
    Algebra alg(4);
    Rng rng(83);

    SUBCASE("positive orientation leaves the terms alone") {
        for (int t = 0; t < 20; ++t) {
            const AngledPair pair =
                random_pair_with_angles(rng, 4, 2, 2, 0.1, 1.4);
            const AngleBivector plain =
                angle_bivector(pair.a.subspace(), pair.b.subspace());
            const AngleBivector oriented = oriented_angle_bivector(pair.a, pair.b);
            CHECK(approx_equal(plain.as_multivector(),
                               oriented.as_multivector(), 1e-9));
        }
    }
    SUBCASE("opposite rays get a half-turn plane") {
        const Subspace v = Subspace::from_vectors(4, {{1, 0, 0, 0}});
        const Blade a = blade_from_frame(v, 1.0, alg);
        const Blade b = blade_from_frame(v, -1.0, alg);
        const AngleBivector phi = oriented_angle_bivector(a, b);
        REQUIRE(phi.terms().size() == 1);
        CHECK(phi.terms()[0].theta == doctest::Approx(pi));
        CHECK(phi.basis_dependent());
        const Multivector e = exp_angle_bivector(phi);
        CHECK(e.scalar_part() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exponential properties over random pairs") {
    Rng rng(89);
    for (int t = 0; t < 100; ++t) {
        const int n = rng.uniform_int(2, 7);
        const int p = rng.uniform_int(1, std::min(4, n));
        const int q = rng.uniform_int(1, std::min(4, n));
        const Blade a = random_blade(rng, n, p);
        const Blade b = random_blade(rng, n, q);
        const AngleBivector phi = oriented_angle_bivector(a, b);
        const Multivector closed = exp_angle_bivector(phi);
        CHECK(closed.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(approx_equal(closed, mv_exp(phi.as_multivector()), 1e-9));

        // the oriented exponential is the sign times the unoriented one,
        // when both come from the same principal bases
        const PrincipalData pd = principal_data(a, b);
        const AngleBivector plain = angle_bivector_from(pd, Algebra(n));
        const double sign = static_cast<double>(pd.sign_ab);
        CHECK(approx_equal(closed, sign * exp_angle_bivector(plain), 1e-9));
    }
}

TEST_CASE("the three rotor actions agree on the principal blade") {
    Rng rng(97);
    for (int t = 0; t < 50; ++t) {
        const int n = rng.uniform_int(2, 6);
        const int p = rng.uniform_int(1, std::min(3, n));
        const Blade a = random_blade(rng, n, p);
        const Blade b = random_blade(rng, n, p);
        const Algebra alg(n);
        const PrincipalData pd = principal_data(a, b);
        const AngleBivector phi = angle_bivector_from(pd, alg);
        const Blade e = certify_blade(pd.e_blade(alg));
        const Multivector f = pd.f_blade(alg);

        const Multivector two_sided = rotor_transport(e, phi).mv();
        const Multivector right = e.mv() * exp_angle_bivector(phi);
        const Multivector left =
            exp_angle_bivector(phi.scaled(-1.0)) * e.mv();
        CHECK(approx_equal(two_sided, f, 1e-9));
        CHECK(approx_equal(right, f, 1e-9));
        CHECK(approx_equal(left, f, 1e-9));
    }
}

TEST_CASE("oriented transport lands on the target blade exactly") {
    Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        const int n = rng.uniform_int(2, 6);
        const int p = rng.uniform_int(1, std::min(3, n));
        const Subspace v = random_subspace(rng, n, p);
        const Subspace w = random_subspace(rng, n, p);
        const Algebra alg(n);
        const Blade a = blade_from_frame(v, 1.0, alg);
        double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const Blade b = blade_from_frame(w, sign, alg);
        const AngleBivector phi = oriented_angle_bivector(a, b);
        const Blade moved = rotor_transport(a, phi);
        if (!phi.basis_dependent()) {
            CHECK(approx_equal(moved.mv(), b.mv(), 1e-9));
        }
        // the one-sided action includes the orientation always
        CHECK(approx_equal(a.mv() * exp_angle_bivector(phi), b.mv(), 1e-9));
    }
}

TEST_CASE("geodesics") {
    SharedLine s;
    const PrincipalData pd = principal_data(s.e, s.f);
    const AngleBivector phi = angle_bivector_from(pd, s.alg);
    const Blade start = certify_blade(pd.e_blade(s.alg));

    SUBCASE("endpoints") {
        CHECK(approx_equal(geodesic_sample(phi, start, 0.0).mv(), start.mv(),
                           1e-12));
        CHECK(approx_equal(geodesic_sample(phi, start, 1.0).mv(),
                           pd.f_blade(s.alg), 1e-12));
        CHECK_THROWS_AS(geodesic_sample(phi, start, 1.5), error);
    }
    SUBCASE("midpoint halves every principal angle") {
        const Blade mid = geodesic_sample(phi, start, 0.5);
        const PrincipalData half = principal_data(start, mid);
        REQUIRE(half.m == 3);
        CHECK(half.theta(0) == doctest::Approx(0.0));
        CHECK(half.theta(1) == doctest::Approx(half_pi / 2.0).epsilon(1e-9));
        CHECK(half.theta(2) == doctest::Approx(half_pi / 2.0).epsilon(1e-9));
    }
    SUBCASE("arc length") {
        CHECK(geodesic_length(phi) ==
              doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("sampled frames match the per-vector formula") {
        Rng rng(103);
        for (int t = 0; t < 30; ++t) {
            const int n = rng.uniform_int(2, 6);
            const int p = rng.uniform_int(1, std::min(3, n));
            const Blade a = random_blade(rng, n, p);
            const Blade b = random_blade(rng, n, p);
            const Algebra alg(n);
            const PrincipalData rpd = principal_data(a, b);
            const AngleBivector rphi = angle_bivector_from(rpd, alg);
            const Blade e = certify_blade(rpd.e_blade(alg));
            const double tt = rng.uniform();
            const Blade sample = geodesic_sample(rphi, e, tt);
            CHECK(approx_equal(sample.mv(),
                               geodesic_frame_oracle(rpd, alg, tt), 1e-9));
        }
    }
}

TEST_CASE("oriented length relation under reversed orientation") {
    Rng rng(107);
    for (int t = 0; t < 40; ++t) {
        const int n = rng.uniform_int(4, 8);
        const int p = rng.uniform_int(1, 2);
        const AngledPair pair = random_pair_with_angles(rng, n, p, p, 0.1, 1.4);
        const Blade minus_b = certify_blade(-pair.b.mv());
        const AngleBivector plain =
            angle_bivector(pair.a.subspace(), pair.b.subspace());
        const AngleBivector oriented = oriented_angle_bivector(pair.a, minus_b);
        const double lo = geodesic_length(oriented);
        const double lp = geodesic_length(plain);
        const double top = plain.terms().empty() ? 0.0 : plain.terms().back().theta;
        CHECK(lo * lo ==
              doctest::Approx(lp * lp + pi * (pi - 2.0 * top)).epsilon(1e-9));
    }
}

TEST_CASE("top-angle right angles leave the exponential stable up to sign") {
    // When the largest angle is right the bivector itself is ambiguous,
    // but exp agrees up to a global sign and the blade product is exact.
    SharedLine s;
    const double r = 1.0 / std::sqrt(2.0);
    const Multivector x2 = Multivector::basis_vector(s.alg, 1);
    const Multivector x3 = Multivector::basis_vector(s.alg, 2);
    const Multivector f2p = vec(s.alg, {0, 0, 0, r, r});
    const Multivector f3p = vec(s.alg, {0, 0, 0, r, -r});
    std::vector<AngleTerm> terms;
    terms.push_back({half_pi, outer_product(x2, f2p)});
    terms.push_back({half_pi, outer_product(x3, f3p)});
    const AngleBivector phi_alt(s.alg, terms, false);
    const AngleBivector phi = angle_bivector(s.v, s.w);

    const Multivector e1 = exp_angle_bivector(phi);
    const Multivector e2 = exp_angle_bivector(phi_alt);
    const bool same = approx_equal(e1, e2, 1e-9);
    const bool flipped = approx_equal(e1, -e2, 1e-9);
    CHECK((same || flipped));

    const Multivector product = reverse(s.e.mv()) * s.f.mv();
    const AngleBivector phi_ef = oriented_angle_bivector(s.e, s.f);
    CHECK(approx_equal(product, exp_angle_bivector(phi_ef), 1e-12));
}

TEST_CASE("the bivector is invariant under a joint rotation of repeated angles") {
    // repeated non-right angles: rotating both principal bases by the same
    // orthogonal map leaves the bivector itself unchanged
    const int n = 6;
    const Algebra alg(n);
    const double theta = 0.7;
    Rng rng(109);
    const Subspace joint = random_subspace(rng, n, 4);
    const auto& y = joint.frame();
    std::vector<lin::Vec> e_rows = {y[0], y[1]};
    std::vector<lin::Vec> f_rows;
    for (int i = 0; i < 2; ++i) {
        lin::Vec f = lin::scaled(e_rows[static_cast<std::size_t>(i)],
                                 std::cos(theta));
        lin::axpy(f, std::sin(theta), y[static_cast<std::size_t>(2 + i)]);
        f_rows.push_back(std::move(f));
    }
    auto phi_of = [&](const std::vector<lin::Vec>& es,
                      const std::vector<lin::Vec>& fs) {
        Multivector acc(alg);
        for (int i = 0; i < 2; ++i) {
            Multivector plane = outer_product(vec(alg, es[static_cast<std::size_t>(i)]),
                                              vec(alg, fs[static_cast<std::size_t>(i)]));
            acc += theta * plane / plane.norm();
        }
        return acc;
    };
    const Multivector phi_base = phi_of(e_rows, f_rows);

    for (int t = 0; t < 10; ++t) {
        const double alpha = rng.uniform(0.0, 2.0 * pi);
        const double c = std::cos(alpha), s = std::sin(alpha);
        std::vector<lin::Vec> e2 = {lin::scaled(e_rows[0], c), lin::scaled(e_rows[0], -s)};
        lin::axpy(e2[0], s, e_rows[1]);
        lin::axpy(e2[1], c, e_rows[1]);
        std::vector<lin::Vec> f2 = {lin::scaled(f_rows[0], c), lin::scaled(f_rows[0], -s)};
        lin::axpy(f2[0], s, f_rows[1]);
        lin::axpy(f2[1], c, f_rows[1]);
        CHECK(approx_equal(phi_of(e2, f2), phi_base, 1e-10));
    }
}

TEST_CASE("with distinct dimensions the larger blade rotates onto the sum") {
    // transporting the larger blade by the reversed bivector lands on a
    // blade spanning V plus the orthogonal part of W
    Rng rng(211);
    for (int t = 0; t < 40; ++t) {
        const int n = rng.uniform_int(3, 7);
        const int p = rng.uniform_int(1, std::min(3, n - 1));
        const int q = rng.uniform_int(p + 1, std::min(4, n));
        const Algebra alg(n);
        const Blade a = random_blade(rng, n, p);
        const Blade b = random_blade(rng, n, q);
        const PODecomposition po = po_decompose(a, b);

        const PrincipalData pd_ba = principal_data(b, a);
        const AngleBivector phi_ba = angle_bivector_from(pd_ba, alg);
        const Blade b_unit = blade_from_frame(b.subspace(), 1.0, alg);
        const Blade moved = rotor_transport(b_unit, phi_ba);

        std::vector<lin::Vec> target = a.subspace().frame();
        const auto& perp = po.w_perp.frame();
        target.insert(target.end(), perp.begin(), perp.end());
        if (lin::orthonormalize(target, 1e-9) != q) continue;
        const Subspace sum(n, target);
        CHECK(sum.containment_residual(moved.subspace()) < 1e-8);
        CHECK(moved.subspace().containment_residual(sum) < 1e-8);
    }
}

TEST_CASE("coordinate decomposition") {
    SUBCASE("identical subspaces give the single unit coordinate") {
        const Subspace v = Subspace::from_vectors(3, {{1, 0, 0}, {0, 1, 0}});
        const AngleBivector phi = angle_bivector(v, v);
        const auto entries = plucker_decomposition(phi);
        REQUIRE(entries.size() == 1);
        CHECK(entries[0].coefficient == doctest::Approx(1.0));
        CHECK(entries[0].indices.empty());
    }
    SUBCASE("squared coefficients sum to one for random plane pairs") {
        Rng rng(113);
        for (int t = 0; t < 50; ++t) {
            const Blade a = random_blade(rng, 4, 2);
            const Blade b = random_blade(rng, 4, 2);
            const AngleBivector phi = angle_bivector_from(principal_data(a, b),
                                                          Algebra(4));
            double total = 0.0;
            for (const auto& e : plucker_decomposition(phi)) {
                total += e.coefficient * e.coefficient;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("scalar and top components read off the angle functionals") {
        Rng rng(127);
        for (int t = 0; t < 30; ++t) {
            const int n = rng.uniform_int(2, 6);
            const int p = rng.uniform_int(1, std::min(3, n));
            const Blade a = random_blade(rng, n, p);
            const Blade b = random_blade(rng, n, p);
            const PrincipalData pd = principal_data(a, b);
            const AngleBivector phi = angle_bivector_from(pd, Algebra(n));
            const Multivector ep = exp_angle_bivector(phi);
            double cos_asym = 1.0, cos_comp = 1.0;
            for (int i = 0; i < pd.m; ++i) {
                cos_asym *= std::cos(pd.theta(i));
                cos_comp *= std::sin(pd.theta(i));
            }
            CHECK(ep.scalar_part() == doctest::Approx(cos_asym).epsilon(1e-9));
            // the grade-2m component carries the complementary cosine; it
            // vanishes (along with the product of sines) when the spans
            // intersect, and does not exist at all when 2m > n
            if (2 * pd.m <= n) {
                CHECK(grade_project(ep, 2 * pd.m).norm() ==
                      doctest::Approx(std::abs(cos_comp)).epsilon(1e-9));
            } else {
                CHECK(std::abs(cos_comp) < 1e-12);
            }
        }
    }
}
