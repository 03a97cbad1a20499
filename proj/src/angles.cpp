#include "ga/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ga {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double cos_product(const std::vector<double>& thetas) {
    double c = 1.0;
    for (double th : thetas) c *= std::cos(th);
    return c;
}

double sin_product(const std::vector<double>& thetas) {
    double s = 1.0;
    for (double th : thetas) s *= std::sin(th);
    return s;
}

PrincipalData pd_of_subspaces(const Subspace& v, const Subspace& w,
                              const Tolerance& tol) {
    if (v.dim() == 0 || w.dim() == 0) {
        throw rank_error("angle of a zero-dimensional subspace");
    }
    const Algebra alg(v.ambient_dim());
    return principal_data(blade_from_frame(v, 1.0, alg),
                          blade_from_frame(w, 1.0, alg), tol);
}

} // namespace

double asymmetric_from(const PrincipalData& pd) {
    if (pd.p > pd.q) return half_pi;
    return clamped_acos(cos_product(pd.thetas));
}

double asymmetric_swapped_from(const PrincipalData& pd) {
    if (pd.q > pd.p) return half_pi;
    return clamped_acos(cos_product(pd.thetas));
}

double complementary_from(const PrincipalData& pd) {
    return clamped_acos(sin_product(pd.thetas));
}

double asymmetric_angle(const Subspace& v, const Subspace& w,
                        const Tolerance& tol) {
    return asymmetric_from(pd_of_subspaces(v, w, tol));
}

double complementary_angle(const Subspace& v, const Subspace& w,
                           const Tolerance& tol) {
    return complementary_from(pd_of_subspaces(v, w, tol));
}

std::pair<double, double> symmetrized_angles(const Subspace& v,
                                             const Subspace& w,
                                             const Tolerance& tol) {
    const PrincipalData pd = pd_of_subspaces(v, w, tol);
    const double vw = asymmetric_from(pd);
    const double wv = asymmetric_swapped_from(pd);
    return {std::max(vw, wv), std::min(vw, wv)};
}

AngleReport oriented_angles(const Blade& a, const Blade& b,
                            const Tolerance& tol) {
    if (a.is_zero() || b.is_zero()) {
        throw rank_error("oriented angles require nonzero blades");
    }
    const PrincipalData pd = principal_data(a, b, tol);
    const OrientationSign eps = relative_orientation(pd, a, b, tol);

    AngleReport r;
    r.asym_vw = asymmetric_from(pd);
    r.asym_wv = asymmetric_swapped_from(pd);
    r.comp = complementary_from(pd);
    r.max_sym = std::max(r.asym_vw, r.asym_wv);
    r.min_sym = std::min(r.asym_vw, r.asym_wv);
    r.proj_factor_vw = std::cos(r.asym_vw);

    const double sign = static_cast<double>(eps.sign);
    r.oriented_asym = clamped_acos(sign * std::cos(r.asym_vw));
    r.oriented_comp = clamped_acos(sign * std::cos(r.comp));
    r.oriented_max_sym = clamped_acos(sign * std::cos(r.max_sym));
    r.oriented_proj_factor = sign * r.proj_factor_vw;
    r.orientation_determinate = eps.determinate;
    return r;
}

} // namespace ga
