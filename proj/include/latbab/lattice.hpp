#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "latbab/babai.hpp"
#include "latbab/errors.hpp"
#include "latbab/linalg.hpp"
#include "latbab/scalar_expr.hpp"

namespace latbab {

// Exact basis entries, stored column-wise: cols[j][i] is component i of
// basis vector j.
using ExactColumns = std::vector<std::vector<ScalarExpr>>;

// A full-rank lattice basis.  Holds the generator matrix (columns are the
// basis vectors), the derived upper-triangular form with positive diagonal,
// and, when the basis was given symbolically, the exact entries.
class LatticeBasis {
public:
    explicit LatticeBasis(MatrixR v) : v_(std::move(v)) { derive(); }

    explicit LatticeBasis(const ExactColumns& cols) : exact_(cols) {
        std::size_t n = cols.size();
        if (n == 0) throw DimensionMismatch("LatticeBasis: empty basis");
        v_ = MatrixR(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (cols[j].size() != n)
                throw DimensionMismatch("LatticeBasis: ragged basis columns");
            for (std::size_t i = 0; i < n; ++i) v_(i, j) = cols[j][i].value();
        }
        derive();
    }

    std::size_t dim() const { return v_.n(); }
    const MatrixR& matrix() const { return v_; }
    const MatrixR& triangular() const { return r_; }
    const std::optional<ExactColumns>& exact() const { return exact_; }
    const std::vector<std::size_t>& permutation() const { return perm_; }

    double volume() const { return volume_; }

    // Babai cell side lengths |r_11|, ..., |r_nn|.
    Vec babai_sizes() const {
        Vec a(dim());
        for (std::size_t i = 0; i < dim(); ++i) a[i] = r_(i, i);
        return a;
    }

    LatticeBasis permuted(const std::vector<std::size_t>& perm) const {
        LatticeBasis out = exact_ ? LatticeBasis(permute_exact(*exact_, perm))
                                  : LatticeBasis(v_.permute_cols(perm));
        out.perm_ = perm;
        return out;
    }

    // True when the stored generator is upper triangular with a positive
    // diagonal (the form the distributed protocol operates on).
    bool is_triangular_positive() const {
        if (!v_.is_upper_triangular(0.0)) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (v_(i, i) <= 0) return false;
        return true;
    }

    double min_distance() const { return shortest_vector_triangular(r_).norm; }

private:
    static ExactColumns permute_exact(const ExactColumns& cols,
                                      const std::vector<std::size_t>& perm) {
        ExactColumns out;
        out.reserve(cols.size());
        for (std::size_t j : perm) out.push_back(cols.at(j));
        return out;
    }

    void derive() {
        r_ = qr_upper_triangular(v_);
        volume_ = 1.0;
        for (std::size_t i = 0; i < dim(); ++i) volume_ *= r_(i, i);
        perm_.resize(dim());
        for (std::size_t i = 0; i < dim(); ++i) perm_[i] = i;
    }

    MatrixR v_;
    MatrixR r_;
    double volume_ = 0.0;
    std::optional<ExactColumns> exact_;
    std::vector<std::size_t> perm_;
};

using GramMatrix = MatrixR;

inline GramMatrix gram(const LatticeBasis& b) { return b.matrix().gram(); }

// Nearest lattice point for an arbitrary (not necessarily triangular) basis.
inline CvpResult closest_point(const LatticeBasis& b, const Vec& x) {
    if (b.dim() > kMaxEnumerationDim)
        throw DimensionTooLarge("closest_point: n <= 24");
    QrResult qr = qr_decompose(b.matrix());
    Vec y = qr.q.transpose().mul(x);
    CvpResult res = closest_point_triangular(qr.r, y);
    res.point = b.matrix().mul(Vec(res.u.begin(), res.u.end()));
    double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d2 += (x[i] - res.point[i]) * (x[i] - res.point[i]);
    res.dist2 = d2;
    return res;
}

inline ShortestVectorResult shortest_vector(const LatticeBasis& b) {
    ShortestVectorResult res = shortest_vector_triangular(b.triangular());
    res.vector = b.matrix().mul(Vec(res.u.begin(), res.u.end()));
    return res;
}

inline double ball_volume(std::size_t n, double r) {
    double nd = static_cast<double>(n);
    return std::pow(3.14159265358979323846, nd / 2.0) / std::tgamma(nd / 2.0 + 1.0) *
           std::pow(r, nd);
}

inline double packing_density(const LatticeBasis& b) {
    double r_pack = b.min_distance() / 2.0;
    return ball_volume(b.dim(), r_pack) / b.volume();
}

}  // namespace latbab
