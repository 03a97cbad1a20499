#pragma once

#include <cstdint>
#include <vector>

#include "ga/errors.hpp"
#include "ga/tolerance.hpp"

namespace ga {

/// Euclidean Clifford algebra of R^n, n <= 14, with dense coefficient
/// storage over the 2^n canonical basis blades.
///
/// A basis blade is a subset S of {1..n} encoded as a bitmask: bit i-1 set
/// means the generator e_i is a factor, factors ordered by increasing index.
/// The coefficient of e_S sits at index S of the coefficient array.
class Algebra {
public:
    static constexpr int max_dim = 14;

    explicit Algebra(int dim) : dim_(dim) {
        if (dim < 1 || dim > max_dim) {
            throw dimension_error("algebra dimension must be in [1, 14]");
        }
    }

    int dim() const { return dim_; }
    std::size_t coeff_count() const { return std::size_t{1} << dim_; }

    /// Sign of the geometric product of basis blades e_S e_T: parity of the
    /// transpositions needed to sort the concatenated factor list. Every
    /// generator squares to +1, so equal factors cancel without extra sign.
    static double product_sign(std::uint32_t s, std::uint32_t t);

    friend bool operator==(const Algebra& a, const Algebra& b) {
        return a.dim_ == b.dim_;
    }
    friend bool operator!=(const Algebra& a, const Algebra& b) {
        return !(a == b);
    }

private:
    int dim_;
};

/// Dense multivector: an immutable-by-convention value type. All operations
/// are pure functions; multivectors are safe to share across threads.
class Multivector {
public:
    explicit Multivector(Algebra alg)
        : alg_(alg), coeffs_(alg.coeff_count(), 0.0) {}

    static Multivector scalar(Algebra alg, double value);
    /// Generator e_{index+1}, index in [0, n).
    static Multivector basis_vector(Algebra alg, int index);
    static Multivector basis_blade(Algebra alg, std::uint32_t mask,
                                   double coeff = 1.0);
    static Multivector from_vector(Algebra alg,
                                   const std::vector<double>& v);

    const Algebra& algebra() const { return alg_; }
    int dim() const { return alg_.dim(); }
    std::size_t coeff_count() const { return coeffs_.size(); }

    double operator[](std::uint32_t mask) const { return coeffs_[mask]; }
    double& operator[](std::uint32_t mask) { return coeffs_[mask]; }

    double scalar_part() const { return coeffs_[0]; }
    double norm_squared() const;
    double norm() const;

    /// Grade-1 part as a coordinate vector of length n.
    std::vector<double> vector_part() const;

    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    Multivector& operator*=(double s);
    Multivector& operator/=(double s);

    friend Multivector operator+(Multivector a, const Multivector& b) {
        return a += b;
    }
    friend Multivector operator-(Multivector a, const Multivector& b) {
        return a -= b;
    }
    friend Multivector operator*(Multivector a, double s) { return a *= s; }
    friend Multivector operator*(double s, Multivector a) { return a *= s; }
    friend Multivector operator/(Multivector a, double s) { return a /= s; }
    friend Multivector operator-(Multivector a) { return a *= -1.0; }

private:
    Algebra alg_;
    std::vector<double> coeffs_;
};

void require_same_algebra(const Multivector& a, const Multivector& b);

/// Clifford geometric product. Bilinear and associative; on vectors
/// vw = v.w + v^w.
Multivector geometric_product(const Multivector& a, const Multivector& b);

inline Multivector operator*(const Multivector& a, const Multivector& b) {
    return geometric_product(a, b);
}

/// <ab>_0, the scalar component of the geometric product.
double scalar_product(const Multivector& a, const Multivector& b);

/// Component subproducts of the geometric product, defined gradewise and
/// extended bilinearly. A negative target grade yields zero.
Multivector outer_product(const Multivector& a, const Multivector& b);
Multivector left_contraction(const Multivector& a, const Multivector& b);
Multivector right_contraction(const Multivector& a, const Multivector& b);
Multivector fat_dot(const Multivector& a, const Multivector& b);
/// Original convention: vanishes whenever either factor has grade 0.
Multivector hestenes_inner(const Multivector& a, const Multivector& b);

Multivector commutator(const Multivector& a, const Multivector& b);
Multivector anticommutator(const Multivector& a, const Multivector& b);

/// Reversion: grade k scales by (-1)^{k(k-1)/2}.
Multivector reverse(const Multivector& m);

/// Restriction to grade k. Throws grade_error when k is outside [0, n].
Multivector grade_project(const Multivector& m, int k);

/// Grades whose component norm exceeds eps * ||m||.
std::vector<int> grades_present(const Multivector& m, double eps);

/// The unique grade of a homogeneous multivector (0 for the zero
/// multivector). Throws grade_error when the input has mixed grades.
int grade_of(const Multivector& m, double eps);

/// Dual w.r.t. a unit blade j: the geometric product m j^{-1}. The blade
/// check is structural: j must be homogeneous, of unit norm, and j~ j must
/// be scalar.
Multivector dual(const Multivector& m, const Multivector& j,
                 const Tolerance& tol = {});

/// Hyperbolic functions and exponential by power series. Terms are added
/// until the running term norm drops below eps_identity * max(1, ||sum||);
/// more than 200 terms raises convergence_error.
Multivector mv_cosh(const Multivector& m, const Tolerance& tol = {});
Multivector mv_sinh(const Multivector& m, const Tolerance& tol = {});
Multivector mv_exp(const Multivector& m, const Tolerance& tol = {});

/// ||a - b||, and the tolerance-based equality used everywhere in tests:
/// distance at most eps * max(1, ||a||, ||b||). Bit equality is never used.
double distance(const Multivector& a, const Multivector& b);
bool approx_equal(const Multivector& a, const Multivector& b, double eps);

} // namespace ga
