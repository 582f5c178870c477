#pragma once

// Dense real linear algebra kernels: LU solve, positive-semidefinite Cholesky,
// and a symmetric eigensolver (Householder tridiagonalization followed by
// implicit-shift QL). Everything here is self-contained and sized for dense
// problems up to a few hundred rows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "gridcert/errors.hpp"

namespace gridcert {

using Vector = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

/// Symmetric matrix with full dense storage; writes keep both triangles equal.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double value = 0.0) : n_(n), data_(n * n, value) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
        return m;
    }

    static SymMatrix from_diag(const Vector& d) {
        SymMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
        return m;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    void add(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] += v;
        if (i != j) data_[j * n_ + i] += v;
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double max_diag() const {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) m = std::max(m, data_[i * n_ + i]);
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
        return t;
    }

    Matrix to_matrix() const {
        Matrix m(n_, n_);
        std::copy(data_.begin(), data_.end(), m.data());
        return m;
    }

private:
    std::size_t n_ = 0;
    Vector data_;
};

inline Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw InvalidArgumentError("matrix-vector shape mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Vector operator*(const SymMatrix& a, const Vector& x) {
    if (a.size() != x.size()) throw InvalidArgumentError("matrix-vector shape mismatch");
    Vector y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double* row = a.data() + i * a.size();
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgumentError("matrix-matrix shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            double* crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline double dot(const Vector& a, const Vector& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

inline double norm_fro(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

inline double norm_fro(const SymMatrix& a) { return norm_fro(a.to_matrix()); }

// ---------------------------------------------------------------------------
// LU solve with partial pivoting.

/// Solves a x = b. Pivots are compared against 1e-13 relative to the largest
/// entry of a; an underflowing pivot raises SingularMatrixError with its index
/// rather than returning a garbage solution.
inline Vector solve_linear(Matrix a, Vector b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw InvalidArgumentError("solve_linear: shape mismatch");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double tiny = 1e-13 * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > tiny)) throw SingularMatrixError(k);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        const double inv = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) * inv;
            if (f == 0.0) continue;
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Cholesky.

struct CholeskyPsd {
    bool psd = false;
    Matrix factor;                 // lower triangular, valid only when psd
    std::size_t failed_index = 0;  // pivot that went negative, valid when !psd
};

/// Semidefinite Cholesky test/factorization. A pivot below -tol*max_diag means
/// not PSD; pivots within the tolerance band are treated as exact zeros and
/// their columns skipped, so boundary matrices (e.g. diag(1,0,2)) pass.
inline CholeskyPsd cholesky_psd(const SymMatrix& m, double tol = 1e-12) {
    const std::size_t n = m.size();
    const double thr = tol * std::max(m.max_diag(), 0.0);

    CholeskyPsd out;
    out.factor = Matrix(n, n);
    Matrix& L = out.factor;
    for (std::size_t k = 0; k < n; ++k) {
        double d = m(k, k);
        for (std::size_t j = 0; j < k; ++j) d -= L(k, j) * L(k, j);
        if (d < -thr) {
            out.psd = false;
            out.failed_index = k;
            return out;
        }
        if (d <= thr) {
            L(k, k) = 0.0;
            continue;  // semidefinite direction; leave the column zero
        }
        L(k, k) = std::sqrt(d);
        const double inv = 1.0 / L(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = m(i, k);
            for (std::size_t j = 0; j < k; ++j) s -= L(i, j) * L(k, j);
            L(i, k) = s * inv;
        }
    }
    out.psd = true;
    return out;
}

/// Strict Cholesky of a positive definite matrix; returns false (leaving L
/// partially written) as soon as a pivot fails to be strictly positive.
/// Used as the fast feasibility test inside barrier line searches.
inline bool cholesky_pd(const SymMatrix& m, Matrix& L) {
    const std::size_t n = m.size();
    if (L.rows() != n || L.cols() != n) L = Matrix(n, n);
    else std::fill(L.data(), L.data() + n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double d = m(k, k);
        const double* lk = L.row(k);
        for (std::size_t j = 0; j < k; ++j) d -= lk[j] * lk[j];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double lkk = std::sqrt(d);
        L(k, k) = lkk;
        const double inv = 1.0 / lkk;
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = m(i, k);
            const double* li = L.row(i);
            for (std::size_t j = 0; j < k; ++j) s -= li[j] * lk[j];
            L(i, k) = s * inv;
        }
    }
    return true;
}

/// log det(A) from its Cholesky factor.
inline double logdet_from_cholesky(const Matrix& L) {
    double s = 0.0;
    for (std::size_t i = 0; i < L.rows(); ++i) s += std::log(L(i, i));
    return 2.0 * s;
}

/// A^{-1} from the Cholesky factor of A = L L^T.
inline Matrix inverse_from_cholesky(const Matrix& L) {
    const std::size_t n = L.rows();
    // Invert L in place (forward substitution per column).
    Matrix Linv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Linv(j, j) = 1.0 / L(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = 0.0;
            const double* li = L.row(i);
            for (std::size_t k = j; k < i; ++k) s -= li[k] * Linv(k, j);
            Linv(i, j) = s / L(i, i);
        }
    }
    // A^{-1} = Linv^T Linv, computed into the full square (symmetric result).
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = i; k < n; ++k) s += Linv(k, i) * Linv(k, j);
            inv(i, j) = s;
            inv(j, i) = s;
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Symmetric eigensolver.

struct EigSym {
    Vector values;   // ascending
    Matrix vectors;  // column i pairs with values[i]; orthonormal
};

namespace detail {

// Householder reduction to tridiagonal form with transform accumulation.
inline void tridiagonalize(Matrix& a, Vector& d, Vector& e) {
    const std::size_t n = a.rows();
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
                for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            a(j, i) = 0.0;
            a(i, j) = 0.0;
        }
    }
}

// Implicit-shift QL on a tridiagonal matrix, rotations accumulated into z.
// sweep_budget caps the total number of QL sweeps across all eigenvalues.
inline void ql_implicit(Vector& d, Vector& e, Matrix& z, std::size_t sweep_budget) {
    const std::size_t n = d.size();
    if (n == 1) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    std::size_t sweeps = 0;
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++sweeps > sweep_budget)
                    throw ConvergenceError("eig_sym: QL sweep budget exhausted");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and an
/// orthonormal set of eigenvectors (stored as columns). Throws
/// ConvergenceError if the QL iteration exceeds its 30n sweep budget.
inline EigSym eig_sym(const SymMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw InvalidArgumentError("eig_sym: empty matrix");
    EigSym out;
    out.vectors = m.to_matrix();
    out.values.assign(n, 0.0);
    Vector e(n, 0.0);
    detail::tridiagonalize(out.vectors, out.values, e);
    detail::ql_implicit(out.values, e, out.vectors, 30 * n);

    // Sort ascending, permuting eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.values[a] < out.values[b]; });
    Vector sorted_vals(n);
    Matrix sorted_vecs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_vals[j] = out.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) sorted_vecs(i, j) = out.vectors(i, order[j]);
    }
    out.values = std::move(sorted_vals);
    out.vectors = std::move(sorted_vecs);
    return out;
}

}  // namespace gridcert
