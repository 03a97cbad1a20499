#include "ga/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ga {

double Algebra::product_sign(std::uint32_t s, std::uint32_t t) {
    int swaps = 0;
    s >>= 1;
    while (s != 0) {
        swaps += std::popcount(s & t);
        s >>= 1;
    }
    return (swaps & 1) ? -1.0 : 1.0;
}

namespace {

inline double reversion_sign(int k) {
    return ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
}

} // namespace

Multivector Multivector::scalar(Algebra alg, double value) {
    Multivector m(alg);
    m[0] = value;
    return m;
}

Multivector Multivector::basis_vector(Algebra alg, int index) {
    if (index < 0 || index >= alg.dim()) {
        throw dimension_error("basis vector index out of range");
    }
    Multivector m(alg);
    m[std::uint32_t{1} << index] = 1.0;
    return m;
}

Multivector Multivector::basis_blade(Algebra alg, std::uint32_t mask,
                                     double coeff) {
    if (mask >= alg.coeff_count()) {
        throw dimension_error("basis blade mask out of range");
    }
    Multivector m(alg);
    m[mask] = coeff;
    return m;
}

Multivector Multivector::from_vector(Algebra alg,
                                     const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != alg.dim()) {
        throw dimension_error("coordinate vector length does not match algebra");
    }
    Multivector m(alg);
    for (int i = 0; i < alg.dim(); ++i) {
        m[std::uint32_t{1} << i] = v[i];
    }
    return m;
}

double Multivector::norm_squared() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return s;
}

double Multivector::norm() const { return std::sqrt(norm_squared()); }

std::vector<double> Multivector::vector_part() const {
    std::vector<double> v(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
        v[static_cast<std::size_t>(i)] = coeffs_[std::uint32_t{1} << i];
    }
    return v;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    require_same_algebra(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
    require_same_algebra(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Multivector& Multivector::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

Multivector& Multivector::operator/=(double s) { return *this *= 1.0 / s; }

void require_same_algebra(const Multivector& a, const Multivector& b) {
    if (a.algebra() != b.algebra()) {
        throw dimension_error("operands belong to different algebras");
    }
}

namespace {

// Shared kernel: accumulate the geometric product, keeping only pairs
// accepted by the filter on (grade s, grade t, grade of s^t).
template <typename Filter>
Multivector product_filtered(const Multivector& a, const Multivector& b,
                             Filter&& keep) {
    require_same_algebra(a, b);
    Multivector out(a.algebra());
    const std::uint32_t n = static_cast<std::uint32_t>(a.coeff_count());
    for (std::uint32_t s = 0; s < n; ++s) {
        const double ca = a[s];
        if (ca == 0.0) continue;
        const int gs = std::popcount(s);
        for (std::uint32_t t = 0; t < n; ++t) {
            const double cb = b[t];
            if (cb == 0.0) continue;
            const std::uint32_t r = s ^ t;
            if (!keep(gs, std::popcount(t), std::popcount(r))) continue;
            out[r] += Algebra::product_sign(s, t) * ca * cb;
        }
    }
    return out;
}

} // namespace

Multivector geometric_product(const Multivector& a, const Multivector& b) {
    return product_filtered(a, b, [](int, int, int) { return true; });
}

double scalar_product(const Multivector& a, const Multivector& b) {
    require_same_algebra(a, b);
    double s = 0.0;
    const std::uint32_t n = static_cast<std::uint32_t>(a.coeff_count());
    for (std::uint32_t i = 0; i < n; ++i) {
        if (a[i] == 0.0 || b[i] == 0.0) continue;
        s += reversion_sign(std::popcount(i)) * a[i] * b[i];
    }
    return s;
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
    return product_filtered(
        a, b, [](int gs, int gt, int gr) { return gr == gs + gt; });
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
    return product_filtered(
        a, b, [](int gs, int gt, int gr) { return gr == gt - gs; });
}

Multivector right_contraction(const Multivector& a, const Multivector& b) {
    return product_filtered(
        a, b, [](int gs, int gt, int gr) { return gr == gs - gt; });
}

Multivector fat_dot(const Multivector& a, const Multivector& b) {
    return product_filtered(a, b, [](int gs, int gt, int gr) {
        return gr == std::abs(gt - gs);
    });
}

Multivector hestenes_inner(const Multivector& a, const Multivector& b) {
    return product_filtered(a, b, [](int gs, int gt, int gr) {
        return gs != 0 && gt != 0 && gr == std::abs(gt - gs);
    });
}

Multivector commutator(const Multivector& a, const Multivector& b) {
    return (a * b - b * a) / 2.0;
}

Multivector anticommutator(const Multivector& a, const Multivector& b) {
    return (a * b + b * a) / 2.0;
}

Multivector reverse(const Multivector& m) {
    Multivector out(m.algebra());
    const std::uint32_t n = static_cast<std::uint32_t>(m.coeff_count());
    for (std::uint32_t i = 0; i < n; ++i) {
        out[i] = reversion_sign(std::popcount(i)) * m[i];
    }
    return out;
}

Multivector grade_project(const Multivector& m, int k) {
    if (k < 0 || k > m.dim()) {
        throw grade_error("grade index outside [0, n]");
    }
    Multivector out(m.algebra());
    const std::uint32_t n = static_cast<std::uint32_t>(m.coeff_count());
    for (std::uint32_t i = 0; i < n; ++i) {
        if (std::popcount(i) == k) out[i] = m[i];
    }
    return out;
}

std::vector<int> grades_present(const Multivector& m, double eps) {
    const double scale = m.norm();
    std::vector<double> by_grade(static_cast<std::size_t>(m.dim()) + 1, 0.0);
    const std::uint32_t n = static_cast<std::uint32_t>(m.coeff_count());
    for (std::uint32_t i = 0; i < n; ++i) {
        by_grade[static_cast<std::size_t>(std::popcount(i))] += m[i] * m[i];
    }
    std::vector<int> out;
    for (int k = 0; k <= m.dim(); ++k) {
        if (std::sqrt(by_grade[static_cast<std::size_t>(k)]) > eps * scale) {
            out.push_back(k);
        }
    }
    return out;
}

int grade_of(const Multivector& m, double eps) {
    const auto grades = grades_present(m, eps);
    if (grades.empty()) return 0;
    if (grades.size() > 1) {
        throw grade_error("multivector has mixed grades");
    }
    return grades.front();
}

Multivector dual(const Multivector& m, const Multivector& j,
                 const Tolerance& tol) {
    require_same_algebra(m, j);
    const double nrm = j.norm();
    if (std::abs(nrm - 1.0) > tol.structural()) {
        throw not_a_blade_error("dual requires a unit blade");
    }
    grade_of(j, tol.structural());  // homogeneity
    const Multivector jr = reverse(j);
    Multivector check = jr * j;
    check[0] -= 1.0;
    if (check.norm() > tol.structural()) {
        throw not_a_blade_error("dual requires a simple unit multivector");
    }
    return m * jr;
}

namespace {

constexpr int series_term_budget = 200;

// Sums term_0 * selector over the exponential series of m. `parity` picks
// even terms (cosh), odd terms (sinh), or all (exp).
enum class SeriesKind { even, odd, all };

Multivector exp_series(const Multivector& m, const Tolerance& tol,
                       SeriesKind kind) {
    Multivector term = Multivector::scalar(m.algebra(), 1.0);
    Multivector sum(m.algebra());
    bool take = (kind != SeriesKind::odd);
    if (take) sum += term;
    for (int k = 1; k <= series_term_budget; ++k) {
        term = term * m / static_cast<double>(k);
        take = (kind == SeriesKind::all) ||
               (kind == SeriesKind::even && k % 2 == 0) ||
               (kind == SeriesKind::odd && k % 2 == 1);
        if (take) sum += term;
        // A safety factor keeps the truncated tail well under the identity
        // tolerance, so identities derived from squares of these series
        // still meet it.
        const double bound =
            1e-3 * tol.identity() * std::max(1.0, sum.norm());
        if (term.norm() < bound) return sum;
    }
    throw convergence_error("power series did not converge in 200 terms");
}

} // namespace

Multivector mv_cosh(const Multivector& m, const Tolerance& tol) {
    return exp_series(m, tol, SeriesKind::even);
}

Multivector mv_sinh(const Multivector& m, const Tolerance& tol) {
    return exp_series(m, tol, SeriesKind::odd);
}

Multivector mv_exp(const Multivector& m, const Tolerance& tol) {
    return exp_series(m, tol, SeriesKind::all);
}

double distance(const Multivector& a, const Multivector& b) {
    return (a - b).norm();
}

bool approx_equal(const Multivector& a, const Multivector& b, double eps) {
    return distance(a, b) <= eps * std::max({1.0, a.norm(), b.norm()});
}

} // namespace ga
