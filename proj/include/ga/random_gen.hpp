#pragma once

#include <cstdint>
#include <random>

#include "ga/blade.hpp"
#include "ga/principal.hpp"

namespace ga {

/// Deterministic random source. The uniform and Gaussian maps are written
/// out explicitly (rather than using the distribution classes) so the same
/// seed yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller, one spare cached.
    double gaussian();

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi);

    /// Derives an independent stream for a sub-task (splitmix finalizer).
    std::uint64_t derive(std::uint64_t salt) const;

    std::uint64_t seed_used() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

lin::Vec random_unit_vector(Rng& rng, int n);

/// Orthonormalized Gaussian frame spanning a random p-subspace.
Subspace random_subspace(Rng& rng, int n, int p, const Tolerance& tol = {});

/// Random blade: random subspace, log-uniform norm in [0.1, 10], random
/// orientation sign.
Blade random_blade(Rng& rng, int n, int p, const Tolerance& tol = {});

Multivector random_multivector(Rng& rng, Algebra alg, double scale = 1.0);

/// Random homogeneous multivector of the given grade with norm at most
/// max_norm (uniform in (0, max_norm]).
Multivector random_homogeneous(Rng& rng, Algebra alg, int grade,
                               double max_norm);

struct AngledPair {
    Blade a;
    Blade b;
    std::vector<double> thetas;  // ascending, size min(p, q)
};

/// Unit-blade pair with prescribed principal angles drawn from
/// [theta_lo, theta_hi] (pairwise gaps at least 0.01 when distinct is
/// set), positive relative orientation when the scalar pairing allows a
/// flip to enforce it. Requires n >= p + q.
AngledPair random_pair_with_angles(Rng& rng, int n, int p, int q,
                                   double theta_lo, double theta_hi,
                                   bool distinct = true,
                                   const Tolerance& tol = {});

} // namespace ga
