#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "latbab/errors.hpp"
#include "latbab/linalg.hpp"

namespace latbab {

constexpr std::size_t kMaxEnumerationDim = 24;

// Nearest integer with ties rounded up: [x] = floor(x + 1/2).  The Babai cell
// is consequently half-open, [-a_i/2, a_i/2) in offset coordinates.
inline std::int64_t nearest_integer(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

struct CvpResult {
    std::vector<std::int64_t> u;  // integer coefficients
    Vec point;                    // V u in the caller's frame
    double dist2 = 0.0;           // ||x - V u||^2
    // Coefficient vectors within the 1e-9 near-tie margin of the optimum,
    // for debugging ambiguous inputs; empty in the common case.
    std::vector<std::vector<std::int64_t>> near_ties;
};

// Axis-aligned Babai cell of an upper-triangular generator: sides |r_ii|.
struct BabaiCell {
    Vec sizes;
    double volume = 1.0;

    explicit BabaiCell(const MatrixR& r) {
        for (std::size_t i = 0; i < r.n(); ++i) {
            double a = std::fabs(r(i, i));
            if (a == 0.0) throw ZeroDiagonal("BabaiCell: zero diagonal entry");
            sizes.push_back(a);
            volume *= a;
        }
    }
};

// Nearest-plane coefficients u_i = [(x_i - sum_{j>i} r_ij u_j) / r_ii],
// computed in the order i = n, ..., 1.
inline CvpResult babai_nearest_plane(const MatrixR& r, const Vec& x) {
    const std::size_t n = r.n();
    if (x.size() != n) throw DimensionMismatch("babai_nearest_plane: vector size");
    CvpResult res;
    res.u.assign(n, 0);
    for (std::size_t ii = n; ii-- > 0;) {
        if (r(ii, ii) == 0.0)
            throw ZeroDiagonal("babai_nearest_plane: zero diagonal entry");
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            s -= r(ii, j) * static_cast<double>(res.u[j]);
        res.u[ii] = nearest_integer(s / r(ii, ii));
    }
    res.point.assign(n, 0.0);
    res.dist2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0;
        for (std::size_t j = i; j < n; ++j) p += r(i, j) * static_cast<double>(res.u[j]);
        res.point[i] = p;
        res.dist2 += (x[i] - p) * (x[i] - p);
    }
    return res;
}

namespace detail {

// Schnorr-Euchner depth-first enumeration on an upper-triangular basis.
// Correctness, not speed, is the contract: pruning keeps a 1e-9 relative
// safety margin and near-optimal candidates are recorded.
class SchnorrEuchner {
public:
    SchnorrEuchner(const MatrixR& r, const Vec& y, bool exclude_zero)
        : r_(r), y_(y), n_(r.n()), exclude_zero_(exclude_zero), cur_(r.n(), 0) {}

    void run(double initial_bound2, const std::vector<std::int64_t>* hint) {
        best_d2_ = initial_bound2;
        if (hint) best_u_ = *hint;
        descend(static_cast<int>(n_) - 1, 0.0);
    }

    bool found() const { return !best_u_.empty(); }
    const std::vector<std::int64_t>& best_u() const { return best_u_; }
    double best_d2() const { return best_d2_; }
    std::vector<std::vector<std::int64_t>> near_ties() const { return ties_; }

private:
    void descend(int i, double partial) {
        if (i < 0) {
            if (exclude_zero_) {
                bool all_zero = true;
                for (auto c : cur_)
                    if (c != 0) { all_zero = false; break; }
                if (all_zero) return;
            }
            if (partial < best_d2_) {
                if (!best_u_.empty() && std::fabs(partial - best_d2_) <= tie_margin())
                    ties_.push_back(best_u_);
                best_d2_ = partial;
                best_u_ = cur_;
            } else if (!best_u_.empty() && partial - best_d2_ <= tie_margin()) {
                ties_.push_back(cur_);
            }
            return;
        }
        double c = y_[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n_; ++j)
            c -= r_(static_cast<std::size_t>(i), j) * static_cast<double>(cur_[j]);
        c /= r_(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        const double rii = r_(static_cast<std::size_t>(i), static_cast<std::size_t>(i));

        std::int64_t u0 = nearest_integer(c);
        // Zig-zag outward from the rounded center; each direction stops once
        // its own contribution already exceeds the pruning bound.
        for (int dir = 0; dir < 2; ++dir) {
            for (std::int64_t step = 0;; ++step) {
                std::int64_t u = dir == 0 ? u0 + step : u0 - 1 - step;
                double t = (c - static_cast<double>(u)) * rii;
                double next = partial + t * t;
                if (next > best_d2_ * (1.0 + 1e-9) + 1e-300) break;
                cur_[static_cast<std::size_t>(i)] = u;
                descend(i - 1, next);
            }
        }
        cur_[static_cast<std::size_t>(i)] = 0;
    }

    double tie_margin() const { return 1e-9 * std::max(1.0, best_d2_); }

    const MatrixR& r_;
    const Vec& y_;
    std::size_t n_;
    bool exclude_zero_;
    std::vector<std::int64_t> cur_;
    std::vector<std::int64_t> best_u_;
    double best_d2_ = 0.0;
    std::vector<std::vector<std::int64_t>> ties_;
};

}  // namespace detail

// Exact closest point on an upper-triangular basis, seeded by the Babai
// point; the returned distance never exceeds the Babai distance.
inline CvpResult closest_point_triangular(const MatrixR& r, const Vec& x) {
    const std::size_t n = r.n();
    if (n > kMaxEnumerationDim)
        throw DimensionTooLarge("closest_point: enumeration limited to n <= 24");
    CvpResult babai = babai_nearest_plane(r, x);
    detail::SchnorrEuchner e(r, x, /*exclude_zero=*/false);
    e.run(babai.dist2 * (1.0 + 1e-9) + 1e-300, &babai.u);
    CvpResult res;
    res.u = e.best_u();
    res.near_ties = e.near_ties();
    res.point.assign(n, 0.0);
    res.dist2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0;
        for (std::size_t j = i; j < n; ++j) p += r(i, j) * static_cast<double>(res.u[j]);
        res.point[i] = p;
        res.dist2 += (x[i] - p) * (x[i] - p);
    }
    return res;
}

// Shortest nonzero vector of an upper-triangular basis: (coefficients, norm).
struct ShortestVectorResult {
    std::vector<std::int64_t> u;
    Vec vector;
    double norm = 0.0;
};

inline ShortestVectorResult shortest_vector_triangular(const MatrixR& r) {
    const std::size_t n = r.n();
    if (n > kMaxEnumerationDim)
        throw DimensionTooLarge("shortest_vector: enumeration limited to n <= 24");
    double bound = r.col_norm(0);
    for (std::size_t j = 1; j < n; ++j) bound = std::min(bound, r.col_norm(j));
    Vec zero(n, 0.0);
    detail::SchnorrEuchner e(r, zero, /*exclude_zero=*/true);
    e.run(bound * bound * (1.0 + 1e-9) + 1e-300, nullptr);
    ShortestVectorResult res;
    res.u = e.best_u();
    if (res.u.empty()) {
        // The shortest column itself achieves the bound.
        std::size_t jmin = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (r.col_norm(j) < r.col_norm(jmin)) jmin = j;
        res.u.assign(n, 0);
        res.u[jmin] = 1;
    }
    res.vector.assign(n, 0.0);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0;
        for (std::size_t j = i; j < n; ++j) p += r(i, j) * static_cast<double>(res.u[j]);
        res.vector[i] = p;
        d2 += p * p;
    }
    res.norm = std::sqrt(d2);
    return res;
}

// All nonzero coefficient vectors u with ||R u|| <= radius (up to sign: only
// one of each +-u pair is returned).
inline std::vector<std::vector<std::int64_t>> enumerate_short_vectors(const MatrixR& r,
                                                                      double radius) {
    const std::size_t n = r.n();
    if (n > kMaxEnumerationDim)
        throw DimensionTooLarge("enumerate_short_vectors: n <= 24");
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(n, 0);
    const double bound2 = radius * radius * (1.0 + 1e-9);
    auto rec = [&](auto&& self, int i, double partial) -> void {
        if (i < 0) {
            for (std::size_t k = 0; k < n; ++k)
                if (cur[k] != 0) {
                    // Canonical sign: last nonzero coefficient positive.
                    std::size_t last = n;
                    for (std::size_t t = n; t-- > 0;)
                        if (cur[t] != 0) { last = t; break; }
                    if (cur[last] > 0) out.push_back(cur);
                    return;
                }
            return;
        }
        double c = 0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
            c -= r(static_cast<std::size_t>(i), j) * static_cast<double>(cur[j]);
        c /= r(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        const double rii = r(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        std::int64_t u0 = nearest_integer(c);
        for (int dir = 0; dir < 2; ++dir) {
            for (std::int64_t step = 0;; ++step) {
                std::int64_t u = dir == 0 ? u0 + step : u0 - 1 - step;
                double t = (c - static_cast<double>(u)) * rii;
                double next = partial + t * t;
                if (next > bound2) break;
                cur[static_cast<std::size_t>(i)] = u;
                self(self, i - 1, next);
            }
        }
        cur[static_cast<std::size_t>(i)] = 0;
    };
    rec(rec, static_cast<int>(n) - 1, 0.0);
    return out;
}

}  // namespace latbab
