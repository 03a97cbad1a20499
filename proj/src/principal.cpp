#include "ga/principal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ga {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

Multivector frame_product(Algebra alg, const std::vector<lin::Vec>& frame,
                          int count) {
    Multivector acc = Multivector::scalar(alg, 1.0);
    for (int i = 0; i < count; ++i) {
        acc = geometric_product(
            acc, Multivector::from_vector(alg, frame[static_cast<std::size_t>(i)]));
    }
    return acc;
}

// sign such that blade = sign * ||blade|| * (product of basis vectors);
// the basis must span the blade's subspace.
int orientation_sign(const Blade& blade, const std::vector<lin::Vec>& basis,
                     int count, Algebra alg) {
    if (count == 0) return blade.sign_scale() >= 0.0 ? 1 : -1;
    const Multivector unit = frame_product(alg, basis, count);
    const double s = scalar_product(reverse(unit), blade.mv()) / blade.norm();
    return s >= 0.0 ? 1 : -1;
}

} // namespace

bool is_zero_angle(double theta) { return theta < angle_zero_eps; }

bool is_right_angle(double theta) {
    return std::abs(theta - half_pi) < angle_zero_eps;
}

Multivector PrincipalData::e_blade(Algebra alg) const {
    return frame_product(alg, e_basis, p);
}

Multivector PrincipalData::f_blade(Algebra alg) const {
    return frame_product(alg, f_basis, q);
}

Multivector PrincipalData::f_proj_blade(Algebra alg) const {
    return frame_product(alg, f_basis, m);
}

Multivector PrincipalData::principal_plane(Algebra alg, int i) const {
    const double th = thetas[static_cast<std::size_t>(i)];
    if (is_zero_angle(th)) {
        throw rank_error("principal plane degenerates at a zero angle");
    }
    const Multivector e =
        Multivector::from_vector(alg, e_basis[static_cast<std::size_t>(i)]);
    const Multivector f =
        Multivector::from_vector(alg, f_basis[static_cast<std::size_t>(i)]);
    Multivector plane = outer_product(e, f);
    return plane / plane.norm();
}

lin::Vec PrincipalData::orthoprincipal_e(Algebra alg, int i) const {
    const Multivector f =
        Multivector::from_vector(alg, f_basis[static_cast<std::size_t>(i)]);
    return grade_project(geometric_product(principal_plane(alg, i), f), 1)
        .vector_part();
}

lin::Vec PrincipalData::orthoprincipal_f(Algebra alg, int i) const {
    const Multivector e =
        Multivector::from_vector(alg, e_basis[static_cast<std::size_t>(i)]);
    return grade_project(geometric_product(e, principal_plane(alg, i)), 1)
        .vector_part();
}

PrincipalData principal_data(const Blade& a, const Blade& b,
                             const Tolerance& tol) {
    (void)tol;  // thresholds here are the fixed angle classification cuts
    if (a.is_zero() || b.is_zero()) {
        throw rank_error("principal data requires nonzero blades");
    }
    const Algebra alg = a.mv().algebra();
    require_same_algebra(a.mv(), b.mv());

    PrincipalData pd;
    pd.n = alg.dim();
    pd.p = a.grade();
    pd.q = b.grade();
    pd.m = std::min(pd.p, pd.q);

    const auto& ea = a.factors();
    const auto& fb = b.factors();

    lin::Mat gram(pd.p, pd.q);
    for (int i = 0; i < pd.p; ++i)
        for (int j = 0; j < pd.q; ++j)
            gram.at(i, j) = lin::dot(ea[static_cast<std::size_t>(i)],
                                     fb[static_cast<std::size_t>(j)]);

    // With a grade-0 operand there are no angles and no rotation; the
    // input frames serve as principal bases directly.
    pd.e_basis = ea;
    pd.f_basis = fb;

    if (pd.m > 0) {
        pd.e_basis.assign(static_cast<std::size_t>(pd.p),
                          lin::Vec(static_cast<std::size_t>(pd.n), 0.0));
        pd.f_basis.assign(static_cast<std::size_t>(pd.q),
                          lin::Vec(static_cast<std::size_t>(pd.n), 0.0));
        const lin::SvdResult svd = lin::svd_small(gram);
        for (int i = 0; i < pd.p; ++i)
            for (int k = 0; k < pd.p; ++k)
                lin::axpy(pd.e_basis[static_cast<std::size_t>(i)], svd.u.at(k, i),
                          ea[static_cast<std::size_t>(k)]);
        for (int j = 0; j < pd.q; ++j)
            for (int k = 0; k < pd.q; ++k)
                lin::axpy(pd.f_basis[static_cast<std::size_t>(j)], svd.v.at(k, j),
                          fb[static_cast<std::size_t>(k)]);
        // arccos of the clamped singular value is ill-conditioned near 1,
        // which would make intersection detection unreliable. The rotated
        // pair gives the angle through atan2, accurate at both endpoints.
        pd.thetas.resize(static_cast<std::size_t>(pd.m));
        for (int i = 0; i < pd.m; ++i) {
            const auto& e = pd.e_basis[static_cast<std::size_t>(i)];
            const auto& f = pd.f_basis[static_cast<std::size_t>(i)];
            const double c = lin::dot(e, f);
            lin::Vec perp = f;
            lin::axpy(perp, -c, e);
            pd.thetas[static_cast<std::size_t>(i)] =
                std::min(std::atan2(lin::norm(perp), c), half_pi);
        }
    }

    // Deterministic sign normal form. First make sign_a = +1: flip the free
    // trailing vector when p > m, otherwise flip the pair (e_1, f_1), which
    // leaves I_1 and the cross-Gram relation intact.
    pd.sign_a = orientation_sign(a, pd.e_basis, pd.p, alg);
    if (pd.sign_a < 0 && pd.p > 0) {
        if (pd.p > pd.m) {
            pd.e_basis[static_cast<std::size_t>(pd.p - 1)] =
                lin::scaled(pd.e_basis[static_cast<std::size_t>(pd.p - 1)], -1.0);
        } else {
            pd.e_basis[0] = lin::scaled(pd.e_basis[0], -1.0);
            pd.f_basis[0] = lin::scaled(pd.f_basis[0], -1.0);
        }
        pd.sign_a = orientation_sign(a, pd.e_basis, pd.p, alg);
    }

    // Then make sign_b = +1 whenever a flip is free: the trailing f beyond
    // the principal pairs, or the last pair's f when that angle is right.
    pd.sign_b = orientation_sign(b, pd.f_basis, pd.q, alg);
    if (pd.sign_b < 0 && pd.q > 0) {
        int flip = -1;
        if (pd.q > pd.m) {
            flip = pd.q - 1;
        } else if (pd.m > 0 && is_right_angle(pd.max_angle())) {
            flip = pd.m - 1;
        }
        if (flip >= 0) {
            pd.f_basis[static_cast<std::size_t>(flip)] =
                lin::scaled(pd.f_basis[static_cast<std::size_t>(flip)], -1.0);
            pd.sign_b = orientation_sign(b, pd.f_basis, pd.q, alg);
        }
    }
    pd.sign_ab = pd.sign_a * pd.sign_b;

    pd.zero_count = 0;
    pd.last_acute = 0;
    for (int i = 0; i < pd.m; ++i) {
        const double th = pd.thetas[static_cast<std::size_t>(i)];
        if (is_zero_angle(th)) ++pd.zero_count;
        if (!is_right_angle(th)) pd.last_acute = i + 1;
    }
    return pd;
}

OrientationSign relative_orientation(const PrincipalData& pd, const Blade& a,
                                     const Blade& b, const Tolerance& tol) {
    const double s = scalar_product(reverse(a.mv()), b.mv());
    if (std::abs(s) > tol.structural() * a.norm() * b.norm()) {
        const int sign = s > 0.0 ? 1 : -1;
        if (sign != pd.sign_ab) {
            throw error("relative orientation disagrees with the principal bases");
        }
        return {sign, true};
    }
    return {pd.sign_ab, false};
}

bool partially_orthogonal(const Subspace& v, const Subspace& w,
                          const Tolerance& tol) {
    if (v.dim() == 0) return false;
    if (v.dim() > w.dim()) return true;
    const Algebra alg(v.ambient_dim());
    const Blade a = blade_from_frame(v, 1.0, alg);
    const Blade b = blade_from_frame(w, 1.0, alg);
    const PrincipalData pd = principal_data(a, b, tol);
    return is_right_angle(pd.max_angle());
}

PODecomposition po_decompose(const Blade& a, const Blade& b,
                             const Tolerance& tol) {
    PrincipalData pd = principal_data(a, b, tol);
    const Algebra alg = b.mv().algebra();

    if (pd.p >= pd.q) {
        Subspace w_proj(pd.n, pd.f_basis);
        Subspace w_perp(pd.n, {});
        return PODecomposition{b, Blade::scalar(alg, 1.0), std::move(w_proj),
                               std::move(w_perp), std::move(pd)};
    }

    std::vector<lin::Vec> proj_frame(pd.f_basis.begin(),
                                     pd.f_basis.begin() + pd.m);
    std::vector<lin::Vec> perp_frame(pd.f_basis.begin() + pd.m,
                                     pd.f_basis.end());
    Subspace w_proj(pd.n, proj_frame);
    Subspace w_perp(pd.n, perp_frame);
    Blade b_proj =
        blade_from_frame(w_proj, pd.sign_b * b.norm(), alg);
    Blade b_perp = blade_from_frame(w_perp, 1.0, alg);
    return PODecomposition{std::move(b_proj), std::move(b_perp),
                           std::move(w_proj), std::move(w_perp), std::move(pd)};
}

} // namespace ga
