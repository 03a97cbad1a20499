#include "ga/blade.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ga {

Subspace::Subspace(int ambient_dim, std::vector<lin::Vec> orthonormal_frame)
    : n_(ambient_dim), frame_(std::move(orthonormal_frame)) {
    for (const auto& v : frame_) {
        if (static_cast<int>(v.size()) != n_) {
            throw dimension_error("frame vector length does not match ambient dimension");
        }
    }
}

Subspace Subspace::from_vectors(int ambient_dim,
                                const std::vector<lin::Vec>& vectors,
                                const Tolerance& tol) {
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != ambient_dim) {
            throw dimension_error("frame vector length does not match ambient dimension");
        }
    }
    std::vector<lin::Vec> frame = vectors;
    const int rank = lin::orthonormalize(frame, tol.structural());
    if (rank != static_cast<int>(vectors.size())) {
        throw rank_error("frame is rank deficient");
    }
    return Subspace(ambient_dim, std::move(frame));
}

lin::Vec Subspace::project(const lin::Vec& v) const {
    lin::Vec out(static_cast<std::size_t>(n_), 0.0);
    for (const auto& u : frame_) lin::axpy(out, lin::dot(u, v), u);
    return out;
}

double Subspace::containment_residual(const Subspace& other) const {
    double worst = 0.0;
    for (const auto& v : other.frame()) {
        lin::Vec r = v;
        lin::axpy(r, -1.0, project(v));
        worst = std::max(worst, lin::norm(r));
    }
    return worst;
}

Blade::Blade(Multivector mv, int grade, std::vector<lin::Vec> factors,
             double sign_scale)
    : mv_(std::move(mv)),
      grade_(grade),
      norm_(mv_.norm()),
      factors_(std::move(factors)),
      sign_scale_(sign_scale) {}

Blade Blade::zero(Algebra alg, int grade) {
    return Blade(Multivector(alg), grade, {}, 0.0);
}

Blade Blade::scalar(Algebra alg, double value) {
    return Blade(Multivector::scalar(alg, value), 0, {}, value);
}

Subspace Blade::subspace() const { return Subspace(mv_.dim(), factors_); }

double Blade::square() const {
    const int k = grade_;
    const double rev = ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
    return rev * norm_ * norm_;
}

Multivector wedge_vectors(Algebra alg, const std::vector<lin::Vec>& vectors) {
    Multivector acc = Multivector::scalar(alg, 1.0);
    for (const auto& v : vectors) {
        acc = outer_product(acc, Multivector::from_vector(alg, v));
    }
    return acc;
}

Blade certify_blade(const Multivector& m, const Tolerance& tol) {
    const int p = grade_of(m, tol.structural());
    const double nrm = m.norm();
    if (nrm == 0.0) return Blade::zero(m.algebra(), p);
    if (p == 0) return Blade::scalar(m.algebra(), m.scalar_part());

    // Pivot on the basis blade with the largest coefficient magnitude.
    std::uint32_t pivot = 0;
    double best = -1.0;
    const std::uint32_t count = static_cast<std::uint32_t>(m.coeff_count());
    for (std::uint32_t s = 0; s < count; ++s) {
        if (std::popcount(s) != p) continue;
        if (std::abs(m[s]) > best) {
            best = std::abs(m[s]);
            pivot = s;
        }
    }

    // Project each canonical factor of the pivot blade onto the carried
    // subspace: P(v) = (v _| m) m~ / ||m||^2, exact when m is simple.
    const Multivector minv = reverse(m) / (nrm * nrm);
    std::vector<lin::Vec> candidates;
    for (int i = 0; i < m.dim(); ++i) {
        if (!(pivot & (std::uint32_t{1} << i))) continue;
        const Multivector ei = Multivector::basis_vector(m.algebra(), i);
        const Multivector proj =
            grade_project(geometric_product(left_contraction(ei, m), minv), 1);
        candidates.push_back(proj.vector_part());
    }

    const int rank = lin::orthonormalize(candidates, tol.structural());
    if (rank != p) {
        throw not_a_blade_error("factor extraction found a rank-deficient span");
    }

    const Multivector unit = wedge_vectors(m.algebra(), candidates);
    const double s = scalar_product(reverse(unit), m);
    if (distance(m, unit * s) > tol.structural() * nrm) {
        throw not_a_blade_error("multivector failed the simplicity test");
    }
    return Blade(m, p, std::move(candidates), s);
}

Blade blade_from_frame(const Subspace& s, double scale, Algebra alg) {
    if (alg.dim() != s.ambient_dim()) {
        throw dimension_error("subspace ambient dimension does not match algebra");
    }
    Multivector acc = Multivector::scalar(alg, scale);
    for (const auto& v : s.frame()) {
        acc = geometric_product(acc, Multivector::from_vector(alg, v));
    }
    return Blade(acc, s.dim(), s.frame(), scale);
}

Blade blade_from_frame(const Subspace& s, double scale) {
    return blade_from_frame(s, scale, Algebra(s.ambient_dim()));
}

Multivector project_blade(const Blade& b, const Subspace& w) {
    if (b.mv().dim() != w.ambient_dim()) {
        throw dimension_error("blade and subspace ambient dimensions differ");
    }
    if (b.is_zero()) return Multivector(b.mv().algebra());
    Multivector acc = Multivector::scalar(b.mv().algebra(), b.sign_scale());
    for (const auto& v : b.factors()) {
        acc = outer_product(acc,
                            Multivector::from_vector(b.mv().algebra(), w.project(v)));
    }
    return acc;
}

Blade blade_inverse(const Blade& b) {
    if (b.is_zero()) throw rank_error("zero blade has no inverse");
    const int k = b.grade();
    const double rev = ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
    const Multivector inv = reverse(b.mv()) / (b.norm() * b.norm());
    return Blade(inv, k, b.factors(), rev * b.sign_scale() / (b.norm() * b.norm()));
}

} // namespace ga
