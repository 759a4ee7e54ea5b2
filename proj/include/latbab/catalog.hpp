#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/scalar_expr.hpp"

namespace latbab {

// Named lattice data.  Entries carry an exact basis and/or published numbers
// (Babai-cell size vector, covering radius); when both are present they must
// agree, which the tests check for the low-dimensional entries.
struct CatalogEntry {
    std::string name;
    std::optional<LatticeBasis> basis;
    std::optional<Vec> babai_sizes;   // published size vector, descending where cited so
    std::optional<double> r_cov;      // published covering radius
};

namespace detail {

inline ScalarExpr se(long long num, long long den = 1) {
    return ScalarExpr(Rational(BigInt(num), BigInt(den)));
}
inline ScalarExpr se_sqrt(long long rn, long long rd, long long sn, long long sd = 1) {
    return ScalarExpr(Rational(BigInt(rn), BigInt(rd)), Rational(BigInt(sn), BigInt(sd)));
}

inline LatticeBasis z_basis(std::size_t n) {
    ExactColumns cols(n, std::vector<ScalarExpr>(n, se(0)));
    for (std::size_t j = 0; j < n; ++j) cols[j][j] = se(1);
    return LatticeBasis(cols);
}

// A_n covering radius: (1/sqrt(2)) * sqrt(2 floor((n+1)/2) (n+1-floor((n+1)/2)) / (n+1)).
inline double an_covering_radius(std::size_t n) {
    double h = std::floor((static_cast<double>(n) + 1.0) / 2.0);
    double np1 = static_cast<double>(n) + 1.0;
    return std::sqrt(h * (np1 - h) / np1);
}

}  // namespace detail

inline CatalogEntry catalog_lookup(const std::string& name) {
    using detail::se;
    using detail::se_sqrt;
    CatalogEntry e;
    e.name = name;

    auto starts_with = [&](const char* p) { return name.rfind(p, 0) == 0; };

    if (starts_with("Z^")) {
        int n = std::atoi(name.c_str() + 2);
        if (n < 1 || n > 24) throw UnknownLattice("catalog: " + name);
        e.basis = detail::z_basis(static_cast<std::size_t>(n));
        e.babai_sizes = Vec(static_cast<std::size_t>(n), 1.0);
        e.r_cov = std::sqrt(static_cast<double>(n)) / 2.0;
        return e;
    }
    if (starts_with("A_")) {
        int n = std::atoi(name.c_str() + 2);
        if (n < 1) throw UnknownLattice("catalog: " + name);
        Vec sizes;
        for (int k = 1; k <= n; ++k)
            sizes.push_back(std::sqrt((static_cast<double>(k) + 1.0) / static_cast<double>(k)));
        e.babai_sizes = sizes;
        e.r_cov = detail::an_covering_radius(static_cast<std::size_t>(n));
        return e;
    }
    if (name == "hexagonal" || name == "A2") {
        ExactColumns cols = {{se(1), se(0)}, {se(1, 2), se_sqrt(1, 2, 3)}};
        e.basis = LatticeBasis(cols);
        e.r_cov = std::sqrt(1.0 / 3.0);
        return e;
    }
    if (name == "BCC") {
        ExactColumns cols = {
            {se(1), se(0), se(0)},
            {se(-1, 3), se_sqrt(2, 3, 2), se(0)},
            {se(-1, 3), se_sqrt(-1, 3, 2), se_sqrt(1, 1, 2, 3)},
        };
        e.basis = LatticeBasis(cols);
        return e;
    }
    if (name == "FCC") {
        ExactColumns cols = {
            {se(1), se(0), se(0)},
            {se(-1, 2), se(-1, 2), se_sqrt(1, 1, 1, 2)},
            {se(0), se(1), se(0)},
        };
        e.basis = LatticeBasis(cols);
        return e;
    }
    if (name == "hp") {
        ExactColumns cols = {
            {se(1), se(0), se(0)},
            {se(-1, 2), se_sqrt(-1, 2, 3), se(0)},
            {se(0), se(0), se(1)},
        };
        e.basis = LatticeBasis(cols);
        return e;
    }
    if (name == "hrd") {
        ExactColumns cols = {
            {se(1), se(0), se(0)},
            {se_sqrt(-1, 5, 5), se_sqrt(2, 5, 5), se(0)},
            {se(0), se(-1, 2), se_sqrt(1, 2, 5)},
        };
        e.basis = LatticeBasis(cols);
        return e;
    }
    if (name == "E8") {
        // Standard generator: basis vectors (2,0,...), (-1,1,0,...), ...,
        // (0,...,-1,1,0) and (1/2,...,1/2); stored column-wise this is upper
        // triangular with diagonal (2, 1, ..., 1, 1/2).
        ExactColumns cols(8, std::vector<ScalarExpr>(8, se(0)));
        cols[0][0] = se(2);
        for (std::size_t j = 1; j <= 6; ++j) {
            cols[j][j - 1] = se(-1);
            cols[j][j] = se(1);
        }
        for (std::size_t i = 0; i < 8; ++i) cols[7][i] = se(1, 2);
        e.basis = LatticeBasis(cols);
        e.r_cov = 1.0;
        return e;
    }
    if (name == "BW16") {
        Vec sizes = {4};
        sizes.insert(sizes.end(), 10, 2.0);
        sizes.insert(sizes.end(), 5, 1.0);
        e.babai_sizes = sizes;
        e.r_cov = std::sqrt(3.0);
        return e;
    }
    if (name == "Leech") {
        Vec sizes = {8};
        sizes.insert(sizes.end(), 11, 4.0);
        sizes.insert(sizes.end(), 11, 2.0);
        sizes.push_back(1.0);
        e.babai_sizes = sizes;
        e.r_cov = std::sqrt(2.0);
        return e;
    }
    throw UnknownLattice("catalog: unknown lattice '" + name + "'");
}

}  // namespace latbab
