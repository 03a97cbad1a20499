#include "ga/verify.hpp"

#include <algorithm>
#include <map>

#include "ga/io.hpp"
#include "ga/random_gen.hpp"

namespace ga {

namespace {

std::string make_digest(std::uint64_t seed, int trial, int n, int p, int q) {
    return "seed=" + std::to_string(seed) + ";trial=" + std::to_string(trial) +
           ";n=" + std::to_string(n) + ";p=" + std::to_string(p) +
           ";q=" + std::to_string(q);
}

struct Aggregator {
    std::map<std::string, VerifyLine> lines;
    std::vector<std::string> order;

    void add(const IdentityResult& r) {
        auto it = lines.find(r.name);
        if (it == lines.end()) {
            order.push_back(r.name);
            it = lines.emplace(r.name, VerifyLine{r.name, 0, 0, 0.0, ""}).first;
        }
        VerifyLine& line = it->second;
        ++line.runs;
        line.max_residual = std::max(line.max_residual, r.residual);
        if (!r.passed) {
            ++line.failures;
            if (line.first_failure_digest.empty()) {
                line.first_failure_digest = r.inputs_digest;
            }
        }
    }

    void add(const std::vector<IdentityResult>& rs) {
        for (const auto& r : rs) add(r);
    }
};

// Coordinate-subspace pair: every principal angle is exactly 0 or pi/2,
// exercising the vanishing branches of the commutation predicate.
std::pair<Blade, Blade> degenerate_pair(Rng& rng, int n) {
    const Algebra alg(n);
    const int p = rng.uniform_int(1, std::min(3, n));
    const int q = rng.uniform_int(1, std::min(3, n));
    std::vector<int> index_pool;
    for (int i = 0; i < n; ++i) index_pool.push_back(i);
    for (int i = n - 1; i > 0; --i) {
        std::swap(index_pool[static_cast<std::size_t>(i)],
                  index_pool[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    }
    const int shared = rng.uniform_int(0, std::min(p, q));
    std::uint32_t mask_a = 0, mask_b = 0;
    int cursor = 0;
    for (int i = 0; i < shared; ++i) {
        const std::uint32_t bit = std::uint32_t{1}
                                  << index_pool[static_cast<std::size_t>(cursor++)];
        mask_a |= bit;
        mask_b |= bit;
    }
    for (int i = shared; i < p && cursor < n; ++i) {
        mask_a |= std::uint32_t{1} << index_pool[static_cast<std::size_t>(cursor++)];
    }
    for (int i = shared; i < q && cursor < n; ++i) {
        mask_b |= std::uint32_t{1} << index_pool[static_cast<std::size_t>(cursor++)];
    }
    const double sa = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double sb = rng.uniform() < 0.5 ? 1.0 : -1.0;
    Tolerance tol;
    return {certify_blade(Multivector::basis_blade(alg, mask_a, sa), tol),
            certify_blade(Multivector::basis_blade(alg, mask_b, sb), tol)};
}

} // namespace

VerifySummary run_verification(const VerifyOptions& options) {
    Aggregator agg;
    const Tolerance& tol = options.tol;

    for (int trial = 0; trial < options.trials; ++trial) {
        Rng base(options.seed);
        Rng rng(base.derive(static_cast<std::uint64_t>(trial) * 1315423911ull));

        const int n = rng.uniform_int(2, options.nmax);
        const int p = rng.uniform_int(1, std::min(4, n));
        const int q = rng.uniform_int(1, std::min(4, n));
        const std::string digest = make_digest(options.seed, trial, n, p, q);

        // Equal-grade pair for the same-grade checkers.
        const Blade a_eq = random_blade(rng, n, p, tol);
        const Blade b_eq = random_blade(rng, n, p, tol);
        if (options.inject_fault && trial == 0) {
            // Sign-flip fault on one side of the first identity, so the
            // harness can prove it surfaces failures with a digest.
            const AngleBivector phi = oriented_angle_bivector(a_eq, b_eq, tol);
            agg.add(make_identity_result(
                "reverse-product-exp",
                geometric_product(reverse(a_eq.mv()), -b_eq.mv()),
                a_eq.norm() * b_eq.norm() * exp_angle_bivector(phi),
                tol.identity(), digest + ";fault=sign-flip"));
        } else {
            agg.add(check_product_rotor_formula(a_eq, b_eq, tol, digest));
        }
        agg.add(check_product_reconstruction(a_eq, b_eq, tol, digest));

        // Mixed-grade pair for everything defined on arbitrary grades.
        const Blade a = random_blade(rng, n, p, tol);
        const Blade b = random_blade(rng, n, q, tol);
        agg.add(check_mixed_product_formula(a, b, tol, digest));
        agg.add(check_subproduct_norms(a, b, tol, digest));
        agg.add(check_oriented_subproducts(a, b, tol, digest));
        agg.add(check_commutator_suite(a, b, tol, digest));
        agg.add(check_grassmann_products(a, b, tol, digest));
        agg.add(check_vanishing_conditions(a, b, tol, digest));

        // Degenerate coordinate pair: hits the true-vanishing branches.
        auto [da, db] = degenerate_pair(rng, n);
        agg.add(check_vanishing_conditions(da, db, tol, digest + ";degenerate"));
        agg.add(check_commutator_suite(da, db, tol, digest + ";degenerate"));

        // General duality on the random pair, exponential duality on a
        // constructed disjoint pair with angles away from the endpoints.
        agg.add(check_duality(a, b, tol, digest));
        if (n >= 4) {
            const int pp = std::min(n / 2, rng.uniform_int(1, 3));
            const AngledPair pair = random_pair_with_angles(
                rng, n, pp, pp, 0.05, 1.5207963267948966, true, tol);
            agg.add(check_duality(pair.a, pair.b, tol, digest + ";disjoint"));
        }

        // Angle recovery from the product alone, against the SVD angles.
        if (n >= 3) {
            const int pr = rng.uniform_int(1, n / 2 >= 1 ? std::min(3, n / 2) : 1);
            const int qr = rng.uniform_int(pr, std::min(3, n - pr));
            if (pr + qr <= n) {
                const AngledPair pair = random_pair_with_angles(
                    rng, n, pr, qr, 0.05, 1.5207963267948966, true, tol);
                const Multivector prod =
                    geometric_product(reverse(pair.a.mv()), pair.b.mv());
                const HitzerRecovery rec = hitzer_recover(prod, pr, qr, tol);
                const PrincipalData pd = principal_data(pair.a, pair.b, tol);
                double worst = 0.0;
                for (int i = 0; i < pd.m; ++i) {
                    worst = std::max(worst,
                                     std::abs(rec.thetas[static_cast<std::size_t>(i)] -
                                              pd.theta(i)));
                }
                IdentityResult r;
                r.name = "angle-recovery";
                r.residual = worst;
                r.passed = worst <= 1e-8;
                r.inputs_digest = digest;
                agg.add(r);
            }
        }

        // Norm multiplicativity through the coordinate route.
        {
            const Multivector ab = a.mv() * b.mv();
            agg.add(make_scalar_result("product-norm-multiplicative", ab.norm(),
                                       a.norm() * b.norm(), tol.identity(),
                                       digest));
            const PrincipalData pd = principal_data(a, b, tol);
            const AngleBivector phi = angle_bivector_from(pd, Algebra(n));
            double total = 0.0;
            for (const auto& e : plucker_decomposition(phi)) {
                total += e.coefficient * e.coefficient;
            }
            agg.add(make_scalar_result("pythagorean-coordinates", total, 1.0,
                                       tol.identity(), digest));
            agg.add(make_scalar_result("exp-unit-norm-closed",
                                       exp_angle_bivector(phi).norm(), 1.0,
                                       tol.identity(), digest));
            agg.add(make_identity_result(
                "exp-closed-vs-series", exp_angle_bivector(phi),
                mv_exp(phi.as_multivector(), tol), tol.identity(), digest));
        }

        // Geodesic endpoints and midpoint halving.
        {
            const Algebra alg(n);
            const PrincipalData pd = principal_data(a_eq, b_eq, tol);
            const AngleBivector phi = angle_bivector_from(pd, alg);
            const Blade e_blade = certify_blade(pd.e_blade(alg), tol);
            const Blade f_blade = certify_blade(pd.f_blade(alg), tol);
            agg.add(make_identity_result(
                "geodesic-endpoints",
                geodesic_sample(phi, e_blade, 1.0, tol).mv(), f_blade.mv(),
                tol.identity(), digest));
            const Blade mid = geodesic_sample(phi, e_blade, 0.5, tol);
            const PrincipalData half = principal_data(e_blade, mid, tol);
            double worst = 0.0;
            for (int i = 0; i < half.m; ++i) {
                worst = std::max(worst,
                                 std::abs(half.theta(i) - pd.theta(i) / 2.0));
            }
            IdentityResult r;
            r.name = "geodesic-midpoint-halving";
            r.residual = worst;
            r.passed = worst <= 1e-8;
            r.inputs_digest = digest;
            agg.add(r);
        }

        // Hyperbolic function properties on a random homogeneous input.
        {
            const Algebra alg(n);
            const int grade = rng.uniform_int(1, std::min(4, n));
            const Multivector h = random_homogeneous(rng, alg, grade, 2.0);
            agg.add(check_hyperbolic_properties(h, tol, digest));
            agg.add(check_hyperbolic_commuting(h, h * rng.uniform(0.2, 1.5),
                                               tol, digest));
        }
    }

    VerifySummary summary;
    for (const auto& name : agg.order) {
        const VerifyLine& line = agg.lines.at(name);
        summary.lines.push_back(line);
        if (line.failures > 0) summary.all_passed = false;
    }
    return summary;
}

std::string format_verify_text(const VerifySummary& summary) {
    std::string out;
    for (const auto& line : summary.lines) {
        out += (line.failures == 0 ? "[pass] " : "[FAIL] ");
        out += line.name;
        out += "  runs=" + std::to_string(line.runs);
        out += " failures=" + std::to_string(line.failures);
        out += " max_residual=" + format_float_human(line.max_residual);
        if (!line.first_failure_digest.empty()) {
            out += " digest=" + line.first_failure_digest;
        }
        out += "\n";
    }
    out += summary.all_passed ? "verification: all identities passed\n"
                              : "verification: FAILURES detected\n";
    return out;
}

std::string format_verify_json(const VerifySummary& summary,
                               const VerifyOptions& options) {
    JsonWriter w;
    w.begin_object();
    w.key("seed");
    w.value(static_cast<std::uint64_t>(options.seed));
    w.key("trials");
    w.value(options.trials);
    w.key("nmax");
    w.value(options.nmax);
    w.key("identities");
    w.begin_array();
    for (const auto& line : summary.lines) {
        w.begin_object();
        w.key("name");
        w.value(line.name);
        w.key("runs");
        w.value(line.runs);
        w.key("failures");
        w.value(line.failures);
        w.key("max_residual");
        w.value(line.max_residual);
        if (!line.first_failure_digest.empty()) {
            w.key("digest");
            w.value(line.first_failure_digest);
        }
        w.end_object();
    }
    w.end_array();
    w.key("all_passed");
    w.value(summary.all_passed);
    w.end_object();
    return w.str() + "\n";
}

} // namespace ga
