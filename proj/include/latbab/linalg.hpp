#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "latbab/errors.hpp"

namespace latbab {

using Vec = std::vector<double>;
using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Dense n-by-n real matrix, row-major.  Columns are basis vectors throughout
// the library.
class MatrixR {
public:
    MatrixR() : n_(0) {}
    explicit MatrixR(std::size_t n) : n_(n), data_(n * n, 0.0) {
        if (n < 1) throw Error("MatrixR: dimension must be >= 1");
    }
    MatrixR(std::size_t n, std::initializer_list<double> vals) : MatrixR(n) {
        if (vals.size() != n * n) throw DimensionMismatch("MatrixR: initializer size");
        std::size_t k = 0;
        for (double v : vals) data_[k++] = v;
    }

    static MatrixR identity(std::size_t n) {
        MatrixR m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t n() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    Vec col(std::size_t j) const {
        Vec c(n_);
        for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_col(std::size_t j, const Vec& c) {
        for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = c[i];
    }

    MatrixR transpose() const {
        MatrixR t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    MatrixR operator*(const MatrixR& o) const {
        MatrixR r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Vec mul(const Vec& x) const {
        Vec y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    MatrixR permute_cols(const std::vector<std::size_t>& perm) const {
        MatrixR r(n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < n_; ++i) r(i, j) = (*this)(i, perm[j]);
        return r;
    }

    MatrixR gram() const {  // A = V^T V
        MatrixR g(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < n_; ++k) s += (*this)(k, i) * (*this)(k, j);
                g(i, j) = s;
            }
        return g;
    }

    double col_norm(std::size_t j) const {
        double s = 0;
        for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j) * (*this)(i, j);
        return std::sqrt(s);
    }

    bool is_upper_triangular(double tol = 0.0) const {
        for (std::size_t i = 1; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (std::fabs((*this)(i, j)) > tol) return false;
        return true;
    }

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct QrResult {
    MatrixR q;  // orthogonal
    MatrixR r;  // upper triangular, positive diagonal
};

// Householder QR with the signs fixed so that diag(R) > 0.  Throws
// SingularMatrix when |det V| falls below 1e-12 times the Hadamard bound.
inline QrResult qr_decompose(const MatrixR& v) {
    const std::size_t n = v.n();
    MatrixR r = v;
    MatrixR qt = MatrixR::identity(n);  // accumulates Q^T

    for (std::size_t k = 0; k + 1 < n; ++k) {
        double alpha = 0;
        for (std::size_t i = k; i < n; ++i) alpha += r(i, k) * r(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (r(k, k) > 0) alpha = -alpha;
        Vec w(n, 0.0);
        w[k] = r(k, k) - alpha;
        for (std::size_t i = k + 1; i < n; ++i) w[i] = r(i, k);
        double wnorm2 = 0;
        for (std::size_t i = k; i < n; ++i) wnorm2 += w[i] * w[i];
        if (wnorm2 == 0.0) continue;
        auto reflect = [&](MatrixR& m) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t i = k; i < n; ++i) s += w[i] * m(i, j);
                s = 2.0 * s / wnorm2;
                for (std::size_t i = k; i < n; ++i) m(i, j) -= s * w[i];
            }
        };
        reflect(r);
        reflect(qt);
    }

    // Zero the subdiagonal explicitly and make the diagonal positive.
    for (std::size_t i = 0; i < n; ++i) {
        if (r(i, i) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) = -r(i, j);
                qt(i, j) = -qt(i, j);
            }
        }
        for (std::size_t j = 0; j < i; ++j) r(i, j) = 0.0;
    }

    double det = 1.0, hadamard = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        det *= r(i, i);
        hadamard *= v.col_norm(i);
    }
    if (std::fabs(det) < 1e-12 * hadamard || det == 0.0)
        throw SingularMatrix("qr_decompose: matrix is singular to working precision");

    return {qt.transpose(), r};
}

inline MatrixR qr_upper_triangular(const MatrixR& v) { return qr_decompose(v).r; }

inline double det_from_qr(const MatrixR& v) {
    MatrixR r = qr_upper_triangular(v);
    double d = 1.0;
    for (std::size_t i = 0; i < r.n(); ++i) d *= r(i, i);
    return d;  // absolute value of det(V)
}

// Solves A x = b by Gaussian elimination with partial pivoting.
inline Vec solve_linear(MatrixR a, Vec b) {
    const std::size_t n = a.n();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
        if (std::fabs(a(piv, k)) < 1e-14)
            throw SingularMatrix("solve_linear: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

}  // namespace latbab
