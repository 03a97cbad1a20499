#include "ga/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ga::lin {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec scaled(const Vec& v, double s) {
    Vec out = v;
    for (double& x : out) x *= s;
    return out;
}

void axpy(Vec& y, double s, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

double Mat::frobenius() const {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

Mat matmul(const Mat& x, const Mat& y) {
    Mat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x.at(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) += xv * y.at(k, j);
        }
    return out;
}

int orthonormalize(std::vector<Vec>& vectors, double eps) {
    std::vector<Vec> kept;
    double scale = 0.0;
    for (const Vec& v : vectors) scale = std::max(scale, norm(v));
    if (scale == 0.0) scale = 1.0;
    for (Vec v : vectors) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& u : kept) axpy(v, -dot(u, v), u);
        }
        const double nv = norm(v);
        if (nv > eps * scale) kept.push_back(scaled(v, 1.0 / nv));
    }
    vectors = std::move(kept);
    return static_cast<int>(vectors.size());
}

void complete_orthonormal(std::vector<Vec>& vectors, int n, double eps) {
    for (int j = 0; j < n && static_cast<int>(vectors.size()) < n; ++j) {
        Vec cand(static_cast<std::size_t>(n), 0.0);
        cand[static_cast<std::size_t>(j)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& u : vectors) axpy(cand, -dot(u, cand), u);
        }
        const double nc = norm(cand);
        if (nc > std::max(eps, 1e-6)) {
            vectors.push_back(scaled(cand, 1.0 / nc));
        }
    }
    if (static_cast<int>(vectors.size()) < n) {
        throw rank_error("failed to complete an orthonormal basis");
    }
}

namespace {

// One-sided Jacobi on the columns of w (rows >= cols), accumulating the
// right rotations into v.
void jacobi_orthogonalize(Mat& w, Mat& v) {
    const int q = w.cols;
    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < q - 1; ++i) {
            for (int j = i + 1; j < q; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < w.rows; ++k) {
                    alpha += w.at(k, i) * w.at(k, i);
                    beta += w.at(k, j) * w.at(k, j);
                    gamma += w.at(k, i) * w.at(k, j);
                }
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) ||
                    gamma == 0.0) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < w.rows; ++k) {
                    const double wi = w.at(k, i), wj = w.at(k, j);
                    w.at(k, i) = c * wi - s * wj;
                    w.at(k, j) = s * wi + c * wj;
                }
                for (int k = 0; k < q; ++k) {
                    const double vi = v.at(k, i), vj = v.at(k, j);
                    v.at(k, i) = c * vi - s * vj;
                    v.at(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }
}

SvdResult svd_tall(const Mat& m) {
    const int p = m.rows, q = m.cols;
    Mat w = m;
    Mat v = Mat::identity(q);
    jacobi_orthogonalize(w, v);

    std::vector<double> sig(static_cast<std::size_t>(q), 0.0);
    for (int j = 0; j < q; ++j) {
        double s = 0.0;
        for (int k = 0; k < p; ++k) s += w.at(k, j) * w.at(k, j);
        sig[static_cast<std::size_t>(j)] = std::sqrt(s);
    }

    std::vector<int> order(static_cast<std::size_t>(q));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sig[static_cast<std::size_t>(a)] > sig[static_cast<std::size_t>(b)];
    });

    SvdResult out;
    out.sigma.resize(static_cast<std::size_t>(q));
    out.v = Mat(q, q);
    std::vector<Vec> ucols;
    const double drop = 1e-14 * std::max(1.0, m.frobenius());
    for (int jj = 0; jj < q; ++jj) {
        const int j = order[static_cast<std::size_t>(jj)];
        const double s = sig[static_cast<std::size_t>(j)];
        out.sigma[static_cast<std::size_t>(jj)] = s;
        for (int k = 0; k < q; ++k) out.v.at(k, jj) = v.at(k, j);
        if (s > drop) {
            Vec col(static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k) col[static_cast<std::size_t>(k)] = w.at(k, j) / s;
            ucols.push_back(std::move(col));
        }
    }
    // Zero singular values leave gaps in u; fill deterministically.
    orthonormalize(ucols, 1e-12);
    complete_orthonormal(ucols, p, 1e-12);
    out.u = Mat(p, p);
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k)
            out.u.at(k, j) = ucols[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return out;
}

} // namespace

SvdResult svd_small(const Mat& m) {
    if (m.rows >= m.cols) return svd_tall(m);
    SvdResult t = svd_tall(m.transposed());
    SvdResult out;
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    out.sigma = std::move(t.sigma);
    return out;
}

EigenResult sym_eigen(const Mat& m) {
    const int n = m.rows;
    Mat a = m;
    Mat q = Mat::identity(n);
    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (std::sqrt(off) < 1e-15 * std::max(1.0, m.frobenius())) break;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double apq = a.at(i, j);
                if (apq == 0.0) continue;
                const double theta = (a.at(j, j) - a.at(i, i)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < n; ++k) {
                    const double aki = a.at(k, i), akj = a.at(k, j);
                    a.at(k, i) = c * aki - s * akj;
                    a.at(k, j) = s * aki + c * akj;
                }
                for (int k = 0; k < n; ++k) {
                    const double aik = a.at(i, k), ajk = a.at(j, k);
                    a.at(i, k) = c * aik - s * ajk;
                    a.at(j, k) = s * aik + c * ajk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qki = q.at(k, i), qkj = q.at(k, j);
                    q.at(k, i) = c * qki - s * qkj;
                    q.at(k, j) = s * qki + c * qkj;
                }
            }
        }
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a.at(x, x) > a.at(y, y); });
    EigenResult out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        out.values[static_cast<std::size_t>(j)] = a.at(src, src);
        for (int k = 0; k < n; ++k) out.vectors.at(k, j) = q.at(k, src);
    }
    return out;
}

} // namespace ga::lin
