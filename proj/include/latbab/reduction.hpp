#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "latbab/babai.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/linalg.hpp"

namespace latbab {

struct MinkowskiCheck {
    bool reduced = true;
    std::vector<std::string> violations;
};

// Gram-matrix inequalities defining a Minkowski-reduced basis for n <= 3:
// ordered diagonal, 2|a_st| <= a_ss (s < t), and for n = 3 the four sign
// combinations of a11 + a22 + 2(s1 s2 a12 + s1 a13 + s2 a23) >= 0, i.e.
// ||v3 + s1 v1 + s2 v2|| >= ||v3||.  (Only these four sign patterns are
// realized by lattice vectors; requiring the condition with the third
// pairwise term's sign free as well would reject genuinely reduced bases.)
inline MinkowskiCheck is_minkowski_reduced(const LatticeBasis& b) {
    const std::size_t n = b.dim();
    if (n > 3) throw UnsupportedDimension("is_minkowski_reduced: n <= 3 only");
    GramMatrix a = gram(b);
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, a(i, i));
    const double slack = 1e-12 * std::max(1.0, scale);

    MinkowskiCheck out;
    auto fail = [&](const std::string& what) {
        out.reduced = false;
        out.violations.push_back(what);
    };
    if (a(0, 0) <= 0) fail("a11 > 0");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (a(i, i) > a(i + 1, i + 1) + slack)
            fail("a" + std::to_string(i + 1) + std::to_string(i + 1) + " <= a" +
                 std::to_string(i + 2) + std::to_string(i + 2));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            if (2.0 * std::fabs(a(s, t)) > a(s, s) + slack)
                fail("2|a" + std::to_string(s + 1) + std::to_string(t + 1) + "| <= a" +
                     std::to_string(s + 1) + std::to_string(s + 1));
    if (n == 3) {
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1})
                if (a(0, 0) + a(1, 1) +
                        2.0 * (s1 * s2 * a(0, 1) + s1 * a(0, 2) + s2 * a(1, 2)) <
                    -slack)
                    fail("a11 + a22 + 2(" + std::to_string(s1 * s2) + " a12 + " +
                         std::to_string(s1) + " a13 + " + std::to_string(s2) + " a23) >= 0");
    }
    return out;
}

namespace detail {

inline double col_norm2(const MatrixR& w, std::size_t j) {
    double s = 0;
    for (std::size_t i = 0; i < w.n(); ++i) s += w(i, j) * w(i, j);
    return s;
}

inline double col_dot(const MatrixR& w, std::size_t i, std::size_t j) {
    double s = 0;
    for (std::size_t k = 0; k < w.n(); ++k) s += w(k, i) * w(k, j);
    return s;
}

// Greedy pre-reduction: pairwise Lagrange steps plus size reduction of each
// vector against the other two, iterated while the total squared length
// drops.  For n <= 3 this lands on (or very near) a Minkowski basis; an
// enumeration polish afterwards makes the result exact.
inline void greedy_reduce(MatrixR& w) {
    const std::size_t n = w.n();
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        // Keep columns sorted by length.
        std::vector<std::size_t> ord(n);
        for (std::size_t i = 0; i < n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(),
                  [&](std::size_t x, std::size_t y) { return col_norm2(w, x) < col_norm2(w, y); });
        MatrixR s(n);
        for (std::size_t j = 0; j < n; ++j) s.set_col(j, w.col(ord[j]));
        w = s;

        for (std::size_t j = 1; j < n; ++j) {
            // Reduce column j against every earlier column.
            for (std::size_t i = 0; i < j; ++i) {
                double ni = col_norm2(w, i);
                if (ni == 0) continue;
                double mu = col_dot(w, i, j) / ni;
                std::int64_t c = nearest_integer(mu);
                if (c != 0) {
                    Vec vj = w.col(j), vi = w.col(i);
                    double before = 0, after = 0;
                    for (std::size_t k = 0; k < n; ++k) {
                        before += vj[k] * vj[k];
                        vj[k] -= static_cast<double>(c) * vi[k];
                        after += vj[k] * vj[k];
                    }
                    if (after < before * (1.0 - 1e-15)) {
                        w.set_col(j, vj);
                        changed = true;
                    }
                }
            }
        }
        if (n == 3) {
            // Try replacing the longest vector by short +-v3 +- c1 v1 +- c2 v2
            // combinations with small coefficients.
            double n2 = col_norm2(w, 2);
            Vec best = w.col(2);
            double bestn = n2;
            for (int c1 = -2; c1 <= 2; ++c1)
                for (int c2 = -2; c2 <= 2; ++c2) {
                    Vec cand = w.col(2);
                    for (std::size_t k = 0; k < n; ++k)
                        cand[k] += c1 * w(k, 0) + c2 * w(k, 1);
                    double cn = 0;
                    for (std::size_t k = 0; k < n; ++k) cn += cand[k] * cand[k];
                    if (cn < bestn * (1.0 - 1e-15)) {
                        bestn = cn;
                        best = cand;
                    }
                }
            if (bestn < n2 * (1.0 - 1e-15)) {
                w.set_col(2, best);
                changed = true;
            }
        }
        if (!changed) break;
    }
}

}  // namespace detail

// Minkowski reduction for n <= 3.  The result generates the same lattice
// (integral unimodular coefficients are verified against the input) and
// satisfies the is_minkowski_reduced inequalities.
inline LatticeBasis minkowski_reduce(const LatticeBasis& b) {
    const std::size_t n = b.dim();
    if (n > 3) throw UnsupportedDimension("minkowski_reduce: n <= 3 only");
    if (n == 1) return b;

    MatrixR w = b.triangular();
    detail::greedy_reduce(w);

    // Enumeration polish: the Minkowski basis vectors all have length at most
    // the longest greedy vector, so collect every candidate up to that radius
    // and take the lexicographically-shortest triple with the right volume.
    double radius = 0;
    for (std::size_t j = 0; j < n; ++j)
        radius = std::max(radius, std::sqrt(detail::col_norm2(w, j)));
    auto cands = enumerate_short_vectors(b.triangular(), radius * (1.0 + 1e-9));
    std::vector<std::pair<double, std::vector<std::int64_t>>> by_norm;
    const MatrixR& r = b.triangular();
    for (const auto& u : cands) {
        Vec v = r.mul(Vec(u.begin(), u.end()));
        double d2 = 0;
        for (double t : v) d2 += t * t;
        by_norm.push_back({d2, u});
    }
    std::sort(by_norm.begin(), by_norm.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    const double vol = b.volume();
    std::vector<std::vector<std::int64_t>> picked;
    if (n == 2) {
        for (std::size_t i = 0; i < by_norm.size() && picked.size() < 2; ++i) {
            for (std::size_t j = i + 1; j < by_norm.size(); ++j) {
                const auto &u1 = by_norm[i].second, &u2 = by_norm[j].second;
                double det = std::fabs(static_cast<double>(u1[0] * u2[1] - u1[1] * u2[0]));
                if (std::fabs(det - 1.0) < 1e-9) {
                    picked = {u1, u2};
                    break;
                }
            }
            if (!picked.empty()) break;
        }
    } else {
        for (std::size_t i = 0; i < by_norm.size() && picked.empty(); ++i)
            for (std::size_t j = i + 1; j < by_norm.size() && picked.empty(); ++j)
                for (std::size_t k = j + 1; k < by_norm.size(); ++k) {
                    const auto &u1 = by_norm[i].second, &u2 = by_norm[j].second,
                               &u3 = by_norm[k].second;
                    double det =
                        static_cast<double>(u1[0]) * (static_cast<double>(u2[1] * u3[2] - u2[2] * u3[1])) -
                        static_cast<double>(u2[0]) * (static_cast<double>(u1[1] * u3[2] - u1[2] * u3[1])) +
                        static_cast<double>(u3[0]) * (static_cast<double>(u1[1] * u2[2] - u1[2] * u2[1]));
                    if (std::fabs(std::fabs(det) - 1.0) < 1e-9) {
                        picked = {u1, u2, u3};
                        break;
                    }
                }
    }
    if (picked.empty())
        throw Error("minkowski_reduce: polish failed to find a reduced basis");

    MatrixR out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec col(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                col[i] += b.matrix()(i, k) * static_cast<double>(picked[j][k]);
        out.set_col(j, col);
    }
    LatticeBasis reduced(out);
    if (std::fabs(reduced.volume() - vol) > 1e-9 * vol)
        throw Error("minkowski_reduce: volume changed (not unimodular)");
    return reduced;
}

// Superbase v_0, ..., v_n with v_0 = -(v_1 + ... + v_n); obtuse means every
// pairwise inner product is <= 0, i.e. every conorm p_ij = -v_i . v_j >= 0.
struct ObtuseSuperbase {
    std::size_t n = 0;
    std::vector<Vec> v;  // n + 1 vectors, index 0..n

    double conorm(std::size_t i, std::size_t j) const {
        double s = 0;
        for (std::size_t k = 0; k < v[i].size(); ++k) s += v[i][k] * v[j][k];
        return -s;
    }

    // Vonorm of the subset sum over S (1-based indices into v_1..v_n).
    double vonorm(const std::vector<std::size_t>& subset) const {
        Vec sum(v[0].size(), 0.0);
        for (std::size_t idx : subset)
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[idx][k];
        double s = 0;
        for (double t : sum) s += t * t;
        return s;
    }

    Vec subset_vector(const std::vector<std::size_t>& subset) const {
        Vec sum(v[0].size(), 0.0);
        for (std::size_t idx : subset)
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[idx][k];
        return sum;
    }
};

// Finds an obtuse superbase for n <= 3.  Sign flips of the Minkowski-reduced
// basis are tried first; if no flip pattern works (which happens for reduced
// bases whose three pairwise products are all positive), superbase switches
// v_i -> -v_i, v_k -> v_k + v_i are applied, each of which strictly lowers
// the total vonorm until every conorm is nonnegative.
inline ObtuseSuperbase obtuse_superbase(const LatticeBasis& b) {
    const std::size_t n = b.dim();
    if (n > 3) throw UnsupportedDimension("obtuse_superbase: n <= 3 only");
    LatticeBasis red = minkowski_reduce(b);
    const MatrixR& w = red.matrix();

    const double tol = 1e-9 * std::max(1.0, w.gram()(0, 0));
    std::vector<Vec> basis(n);
    for (std::size_t j = 0; j < n; ++j) basis[j] = w.col(j);

    auto pair_ok = [&](const std::vector<Vec>& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                double d = 0;
                for (std::size_t k = 0; k < vs[i].size(); ++k) d += vs[i][k] * vs[j][k];
                if (d > tol) return false;
            }
        return true;
    };

    bool found = false;
    std::vector<Vec> flipped = basis;
    for (std::size_t mask = 0; mask < (1u << n) && !found; ++mask) {
        std::vector<Vec> cand = basis;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j))
                for (double& t : cand[j]) t = -t;
        std::vector<Vec> full = cand;
        Vec v0(n, 0.0);
        for (const auto& vj : cand)
            for (std::size_t k = 0; k < n; ++k) v0[k] -= vj[k];
        full.insert(full.begin(), v0);
        if (pair_ok(full)) {
            flipped = cand;
            found = true;
        }
    }

    std::vector<Vec> super;
    {
        Vec v0(n, 0.0);
        for (const auto& vj : flipped)
            for (std::size_t k = 0; k < n; ++k) v0[k] -= vj[k];
        super.push_back(v0);
        for (const auto& vj : flipped) super.push_back(vj);
    }

    if (!found) {
        // Conway-Sloane style switching; total vonorm drops by 2 eps per step.
        for (int iter = 0; iter < 1000; ++iter) {
            double worst = tol;
            std::size_t wi = 0, wj = 0;
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j) {
                    double d = 0;
                    for (std::size_t k = 0; k < n; ++k) d += super[i][k] * super[j][k];
                    if (d > worst) {
                        worst = d;
                        wi = i;
                        wj = j;
                    }
                }
            if (worst <= tol) break;
            std::vector<Vec> next = super;
            for (double& t : next[wi]) t = -t;
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == wi || k == wj) continue;
                for (std::size_t c = 0; c < n; ++c) next[k][c] += super[wi][c];
            }
            super = next;
        }
    }

    ObtuseSuperbase out;
    out.n = n;
    out.v = super;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            if (out.conorm(i, j) < -tol)
                throw NoObtuseSuperbaseFound(
                    "obtuse_superbase: switching did not converge (degenerate input?)");
    Vec sum(n, 0.0);
    for (const auto& vv : out.v)
        for (std::size_t k = 0; k < n; ++k) sum[k] += vv[k];
    for (double t : sum)
        if (std::fabs(t) > 1e-9)
            throw NoObtuseSuperbaseFound("obtuse_superbase: superbase does not sum to zero");
    return out;
}

}  // namespace latbab
