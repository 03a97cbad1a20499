#pragma once

#include <vector>

#include "ga/errors.hpp"

namespace ga::lin {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec scaled(const Vec& v, double s);
/// y += s * x
void axpy(Vec& y, double s, const Vec& x);

/// Small dense row-major matrix.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }

    static Mat identity(int n);
    Mat transposed() const;
    double frobenius() const;
};

Mat matmul(const Mat& x, const Mat& y);

/// Modified Gram-Schmidt with a re-orthogonalization pass. Vectors whose
/// pivot norm falls below eps (relative to input scale) are dropped; the
/// return value is the rank. `vectors` is replaced by the orthonormal set.
int orthonormalize(std::vector<Vec>& vectors, double eps);

/// Extends an orthonormal set to an orthonormal basis of R^n, choosing
/// completion directions from the canonical basis deterministically.
void complete_orthonormal(std::vector<Vec>& vectors, int n, double eps);

struct SvdResult {
    Mat u;                  // rows x rows, orthogonal
    std::vector<double> sigma;  // min(rows, cols), descending, >= 0
    Mat v;                  // cols x cols, orthogonal
};

/// One-sided Jacobi SVD for matrices with rows, cols <= 14. Singular values
/// are sorted descending with index tie-break; m = u diag(sigma) v^T to
/// around 1e-14 relative.
SvdResult svd_small(const Mat& m);

struct EigenResult {
    std::vector<double> values;  // descending
    Mat vectors;                 // columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
EigenResult sym_eigen(const Mat& m);

} // namespace ga::lin
