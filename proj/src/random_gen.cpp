#include "ga/random_gen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace ga {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<int>(x % span);
}

std::uint64_t Rng::derive(std::uint64_t salt) const {
    std::uint64_t z = seed_ + salt + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

lin::Vec random_unit_vector(Rng& rng, int n) {
    lin::Vec v(static_cast<std::size_t>(n));
    double nn = 0.0;
    while (nn < 1e-8) {
        for (double& x : v) x = rng.gaussian();
        nn = lin::norm(v);
    }
    return lin::scaled(v, 1.0 / nn);
}

Subspace random_subspace(Rng& rng, int n, int p, const Tolerance& tol) {
    while (true) {
        std::vector<lin::Vec> rows;
        for (int i = 0; i < p; ++i) {
            lin::Vec v(static_cast<std::size_t>(n));
            for (double& x : v) x = rng.gaussian();
            rows.push_back(std::move(v));
        }
        if (lin::orthonormalize(rows, tol.structural()) == p) {
            return Subspace(n, std::move(rows));
        }
    }
}

Blade random_blade(Rng& rng, int n, int p, const Tolerance& tol) {
    const Subspace s = random_subspace(rng, n, p, tol);
    const double log_lo = std::log(0.1), log_hi = std::log(10.0);
    double scale = std::exp(rng.uniform(log_lo, log_hi));
    if (rng.uniform() < 0.5) scale = -scale;
    return blade_from_frame(s, scale, Algebra(n));
}

Multivector random_multivector(Rng& rng, Algebra alg, double scale) {
    Multivector m(alg);
    for (std::uint32_t i = 0; i < alg.coeff_count(); ++i) {
        m[i] = scale * rng.gaussian();
    }
    return m;
}

Multivector random_homogeneous(Rng& rng, Algebra alg, int grade,
                               double max_norm) {
    Multivector m(alg);
    for (std::uint32_t i = 0; i < alg.coeff_count(); ++i) {
        if (std::popcount(i) == grade) m[i] = rng.gaussian();
    }
    const double nrm = m.norm();
    if (nrm == 0.0) return m;
    return m * (rng.uniform(0.05, 1.0) * max_norm / nrm);
}

AngledPair random_pair_with_angles(Rng& rng, int n, int p, int q,
                                   double theta_lo, double theta_hi,
                                   bool distinct, const Tolerance& tol) {
    if (n < p + q) {
        throw dimension_error("constructed pairs need n >= p + q");
    }
    const int m = std::min(p, q);
    std::vector<double> thetas;
    for (int attempt = 0; attempt < 256; ++attempt) {
        thetas.clear();
        for (int i = 0; i < m; ++i) thetas.push_back(rng.uniform(theta_lo, theta_hi));
        std::sort(thetas.begin(), thetas.end());
        if (!distinct) break;
        bool ok = true;
        for (int i = 0; i + 1 < m; ++i) {
            if (thetas[static_cast<std::size_t>(i + 1)] -
                    thetas[static_cast<std::size_t>(i)] < 0.01) {
                ok = false;
            }
        }
        if (ok) break;
    }

    const Subspace joint = random_subspace(rng, n, p + q, tol);
    const auto& dirs = joint.frame();
    std::vector<lin::Vec> e_rows(dirs.begin(), dirs.begin() + p);
    std::vector<lin::Vec> f_rows;
    for (int i = 0; i < m; ++i) {
        lin::Vec f = lin::scaled(e_rows[static_cast<std::size_t>(i)],
                                 std::cos(thetas[static_cast<std::size_t>(i)]));
        lin::axpy(f, std::sin(thetas[static_cast<std::size_t>(i)]),
                  dirs[static_cast<std::size_t>(p + i)]);
        f_rows.push_back(std::move(f));
    }
    for (int i = m; i < q; ++i) {
        f_rows.push_back(dirs[static_cast<std::size_t>(p + i)]);
    }

    const Algebra alg(n);
    Blade a = blade_from_frame(Subspace(n, e_rows), 1.0, alg);
    Blade b = blade_from_frame(Subspace(n, f_rows), 1.0, alg);
    if (scalar_product(reverse(a.mv()), b.mv()) < 0.0) {
        b = blade_from_frame(Subspace(n, f_rows), -1.0, alg);
    }
    return AngledPair{std::move(a), std::move(b), std::move(thetas)};
}

} // namespace ga
