#include "ga/angle_bivector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ga {

namespace {

constexpr double pi = std::numbers::pi;

Multivector terms_to_multivector(Algebra alg,
                                 const std::vector<AngleTerm>& terms) {
    Multivector mv(alg);
    for (const auto& t : terms) mv += t.theta * t.plane;
    return mv;
}

} // namespace

AngleBivector::AngleBivector(Algebra alg, std::vector<AngleTerm> terms,
                             bool oriented,
                             std::optional<PrincipalData> source,
                             bool basis_dependent)
    : alg_(alg),
      terms_(std::move(terms)),
      mv_(terms_to_multivector(alg, terms_)),
      oriented_(oriented),
      source_(std::move(source)),
      basis_dependent_(basis_dependent) {}

AngleBivector AngleBivector::scaled(double t) const {
    std::vector<AngleTerm> scaled_terms;
    for (const auto& term : terms_) {
        if (t * term.theta != 0.0) {
            scaled_terms.push_back({t * term.theta, term.plane});
        }
    }
    return AngleBivector(alg_, std::move(scaled_terms), oriented_, source_,
                         basis_dependent_);
}

double AngleBivector::length() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.theta * t.theta;
    return std::sqrt(s);
}

AngleBivector angle_bivector_from(const PrincipalData& pd, Algebra alg) {
    std::vector<AngleTerm> terms;
    for (int i = 0; i < pd.m; ++i) {
        const double th = pd.theta(i);
        if (is_zero_angle(th)) continue;
        terms.push_back({th, pd.principal_plane(alg, i)});
    }
    const bool ambiguous = pd.m > 0 && is_right_angle(pd.max_angle());
    return AngleBivector(alg, std::move(terms), false, pd, ambiguous);
}

AngleBivector angle_bivector(const Subspace& v, const Subspace& w,
                             const Tolerance& tol) {
    if (v.dim() == 0 || w.dim() == 0) {
        throw rank_error("angle bivector requires nonzero subspaces");
    }
    const Algebra alg(v.ambient_dim());
    const PrincipalData pd = principal_data(blade_from_frame(v, 1.0, alg),
                                            blade_from_frame(w, 1.0, alg), tol);
    return angle_bivector_from(pd, alg);
}

namespace {

// A unit plane through the last principal direction, used to rotate a
// subspace onto itself with reversed orientation. Prefers a direction
// orthogonal to both subspaces so the two-sided rotor action stays exact.
Multivector fabricated_flip_plane(const PrincipalData& pd, Algebra alg) {
    std::vector<lin::Vec> span = pd.e_basis;
    span.insert(span.end(), pd.f_basis.begin(), pd.f_basis.end());
    lin::orthonormalize(span, 1e-12);
    const std::size_t joint = span.size();
    lin::complete_orthonormal(span, pd.n, 1e-12);
    const lin::Vec& last_e = pd.e_basis.back();
    lin::Vec partner;
    if (span.size() > joint) {
        partner = span[joint];
    } else if (pd.p >= 2) {
        partner = pd.e_basis[static_cast<std::size_t>(pd.p - 2)];
    } else {
        throw error("no plane is available to flip the orientation");
    }
    Multivector plane = outer_product(Multivector::from_vector(alg, last_e),
                                      Multivector::from_vector(alg, partner));
    return plane / plane.norm();
}

} // namespace

AngleBivector oriented_angle_bivector(const Blade& a, const Blade& b,
                                      const Tolerance& tol) {
    if (a.is_zero() || b.is_zero()) {
        throw rank_error("oriented angle bivector requires nonzero blades");
    }
    const Algebra alg = a.mv().algebra();
    return oriented_angle_bivector_from(principal_data(a, b, tol), alg);
}

AngleBivector oriented_angle_bivector_from(const PrincipalData& pd,
                                           Algebra alg) {
    std::vector<AngleTerm> terms;
    for (int i = 0; i < pd.m; ++i) {
        const double th = pd.theta(i);
        if (is_zero_angle(th)) continue;
        terms.push_back({th, pd.principal_plane(alg, i)});
    }

    bool fabricated = false;
    if (pd.sign_ab == -1) {
        if (!terms.empty()) {
            AngleTerm& top = terms.back();
            top.theta = pi - top.theta;
            top.plane = -top.plane;
        } else {
            terms.push_back({pi, fabricated_flip_plane(pd, alg)});
            fabricated = true;
        }
    }

    bool ambiguous = fabricated;
    if (!terms.empty() && pd.m > 0) {
        const double top = terms.back().theta;
        const double below = pd.m >= 2 ? pd.theta(pd.m - 2) : 0.0;
        if (pd.m >= 2 && std::abs(below + top - pi) < angle_zero_eps) {
            ambiguous = true;
        }
        if (pd.sign_ab == 1 && is_right_angle(pd.max_angle())) ambiguous = true;
    }
    return AngleBivector(alg, std::move(terms), true, pd, ambiguous);
}

Multivector exp_angle_bivector(const AngleBivector& phi) {
    Multivector acc = Multivector::scalar(phi.algebra(), 1.0);
    for (const auto& t : phi.terms()) {
        Multivector rotor = t.plane * std::sin(t.theta);
        rotor[0] += std::cos(t.theta);
        acc = acc * rotor;
    }
    return acc;
}

Blade rotor_transport(const Blade& e, const AngleBivector& phi,
                      const Tolerance& tol) {
    if (std::abs(e.norm() - 1.0) > 1e-8) {
        throw subspace_mismatch_error("rotor transport requires a unit blade");
    }
    if (phi.source()) {
        const Subspace v = phi.source()->v_subspace();
        if (e.grade() != v.dim() ||
            v.containment_residual(e.subspace()) > 1e-7) {
            throw subspace_mismatch_error(
                "blade does not span the bivector's source subspace");
        }
    }
    const Multivector half = exp_angle_bivector(phi.scaled(0.5));
    const Multivector moved =
        geometric_product(geometric_product(reverse(half), e.mv()), half);
    return certify_blade(moved, tol);
}

Blade geodesic_sample(const AngleBivector& phi, const Blade& e, double t,
                      const Tolerance& tol) {
    if (t < 0.0 || t > 1.0) {
        throw error("geodesic parameter outside [0, 1]");
    }
    return rotor_transport(e, phi.scaled(t), tol);
}

double geodesic_length(const AngleBivector& phi) { return phi.length(); }

namespace {

std::string plane_factor_label(const char* stem, int index) {
    return std::string(stem) + std::to_string(index);
}

struct YFactor {
    char kind;    // 'f' or 'g'
    int index;    // 1-based principal index
    lin::Vec vec;
};

// The joint orthonormal basis spanned by the f_i and the orthoprincipal
// directions g_i, ordered f_1..f_d, then g_i, f_i per rotation plane.
std::vector<YFactor> y_sequence(const PrincipalData& pd, Algebra alg) {
    std::vector<YFactor> out;
    for (int i = 0; i < pd.m; ++i) {
        const double th = pd.theta(i);
        if (is_zero_angle(th)) {
            out.push_back({'f', i + 1, pd.f_basis[static_cast<std::size_t>(i)]});
        } else {
            out.push_back({'g', i + 1, pd.orthoprincipal_e(alg, i)});
            out.push_back({'f', i + 1, pd.f_basis[static_cast<std::size_t>(i)]});
        }
    }
    return out;
}

} // namespace

std::vector<PluckerEntry> plucker_decomposition(const AngleBivector& phi) {
    if (!phi.source()) {
        throw error("coordinate decomposition requires principal data");
    }
    const PrincipalData& pd = *phi.source();
    const Algebra alg = phi.algebra();
    const Multivector f_blade = pd.f_proj_blade(alg);

    const auto& terms = phi.terms();
    const int k = static_cast<int>(terms.size());
    std::vector<PluckerEntry> out;
    for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << k); ++subset) {
        PluckerEntry entry{{},
                           1.0,
                           Multivector::scalar(alg, 1.0),
                           Multivector(alg),
                           ""};
        for (int j = 0; j < k; ++j) {
            const AngleTerm& t = terms[static_cast<std::size_t>(j)];
            const int principal_index = std::min(pd.zero_count + j + 1, pd.m);
            if (subset & (std::uint32_t{1} << j)) {
                entry.coefficient *= std::sin(t.theta);
                entry.plane_product = entry.plane_product * t.plane;
                entry.indices.push_back(principal_index);
            } else {
                entry.coefficient *= std::cos(t.theta);
            }
        }
        entry.coordinate_blade = entry.plane_product * f_blade;
        for (int i = 1; i <= pd.m; ++i) {
            const bool in_subset =
                std::find(entry.indices.begin(), entry.indices.end(), i) !=
                entry.indices.end();
            if (!entry.label.empty()) entry.label += "^";
            entry.label += plane_factor_label(in_subset ? "g" : "f", i);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<PluckerEntry> plucker_full_coordinates(const AngleBivector& phi) {
    std::vector<PluckerEntry> nonzero = plucker_decomposition(phi);
    const PrincipalData& pd = *phi.source();
    const Algebra alg = phi.algebra();
    const Multivector f_inverse = reverse(pd.f_proj_blade(alg));

    const std::vector<YFactor> y = y_sequence(pd, alg);
    const int count = static_cast<int>(y.size());
    const int m = pd.m;

    // Enumerate all size-m subsets of the joint basis in lexicographic
    // order, and splice the nonzero entries (already in counting order)
    // in front of the vanishing ones.
    std::vector<PluckerEntry> zero_entries;
    std::vector<int> pick(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
    auto advance = [&]() {
        int i = m - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == count - m + i) --i;
        if (i < 0) return false;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) {
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
        return true;
    };
    if (m == 0) return nonzero;
    do {
        std::string label;
        bool per_plane_pair = true;
        std::vector<bool> covered(static_cast<std::size_t>(m) + 1, false);
        std::vector<lin::Vec> factors;
        for (int i = 0; i < m; ++i) {
            const YFactor& yf = y[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            if (!label.empty()) label += "^";
            label += plane_factor_label(yf.kind == 'g' ? "g" : "f", yf.index);
            if (covered[static_cast<std::size_t>(yf.index)]) per_plane_pair = false;
            covered[static_cast<std::size_t>(yf.index)] = true;
            factors.push_back(yf.vec);
        }
        if (per_plane_pair) continue;  // one of the nonzero entries
        const Multivector coordinate = wedge_vectors(alg, factors);
        zero_entries.push_back(PluckerEntry{{},
                                            0.0,
                                            coordinate * f_inverse,
                                            coordinate,
                                            std::move(label)});
    } while (advance());

    nonzero.insert(nonzero.end(), zero_entries.begin(), zero_entries.end());
    return nonzero;
}

} // namespace ga
