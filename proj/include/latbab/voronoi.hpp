#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "latbab/errors.hpp"
#include "latbab/polyhedron.hpp"
#include "latbab/reduction.hpp"

namespace latbab {

enum class CellType {
    Rectangle,  // 2-D
    Hexagon,    // 2-D
    Cuboid,
    HexagonalPrism,
    RhombicDodecahedron,
    HexarhombicDodecahedron,
    TruncatedOctahedron,
};

inline const char* cell_type_name(CellType t) {
    switch (t) {
        case CellType::Rectangle: return "rectangle";
        case CellType::Hexagon: return "hexagon";
        case CellType::Cuboid: return "cuboid";
        case CellType::HexagonalPrism: return "hexagonal-prism";
        case CellType::RhombicDodecahedron: return "rhombic-dodecahedron";
        case CellType::HexarhombicDodecahedron: return "hexa-rhombic-dodecahedron";
        case CellType::TruncatedOctahedron: return "truncated-octahedron";
    }
    return "?";
}

struct VoronoiCellSummary {
    CellType type = CellType::Cuboid;
    std::vector<Vec> relevant_vectors;  // one representative per +- pair
    std::vector<Vec> vertices;
    double r_pack = 0;
    double r_cov = 0;
    double volume = 0;
    // Raw conorms p_ij keyed by (i, j), 0 <= i < j <= n, for auditing
    // classifications near the zero threshold.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> conorms;
};

// The seven subset sums (1-based indices into v_1..v_n) whose +- pairs carry
// all Voronoi-relevant vectors of a 3-D lattice of Voronoi's first kind.
inline std::vector<std::vector<std::size_t>> voronoi_subsets_3d() {
    return {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
}

// Classifies a 3-D Voronoi cell from which conorms vanish.  Zero conorms are
// edges of the complete graph on the superbase indices {0,1,2,3}: none ->
// truncated octahedron; one -> hexa-rhombic dodecahedron; two sharing an
// index -> hexagonal prism; two disjoint -> rhombic dodecahedron; a triangle
// -> cuboid.
inline CellType classify_conorm_pattern_3d(const ObtuseSuperbase& s, double eps_conorm) {
    std::vector<std::pair<std::size_t, std::size_t>> zeros;
    for (std::size_t i = 0; i <= 3; ++i)
        for (std::size_t j = i + 1; j <= 3; ++j)
            if (std::fabs(s.conorm(i, j)) <= eps_conorm) zeros.push_back({i, j});
    switch (zeros.size()) {
        case 0:
            return CellType::TruncatedOctahedron;
        case 1:
            return CellType::HexarhombicDodecahedron;
        case 2: {
            bool share = zeros[0].first == zeros[1].first || zeros[0].first == zeros[1].second ||
                         zeros[0].second == zeros[1].first || zeros[0].second == zeros[1].second;
            return share ? CellType::HexagonalPrism : CellType::RhombicDodecahedron;
        }
        case 3: {
            std::vector<std::size_t> idx;
            for (auto& z : zeros) {
                idx.push_back(z.first);
                idx.push_back(z.second);
            }
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            if (idx.size() == 3) return CellType::Cuboid;  // zeros form a triangle
            throw DegenerateInput("classify_conorm_pattern_3d: unrecognized zero pattern");
        }
        default:
            throw DegenerateInput("classify_conorm_pattern_3d: lattice is degenerate");
    }
}

// Half-space description x . v <= v.v/2 for every +- relevant vector.
inline Polyhedron3 voronoi_polyhedron_3d(const ObtuseSuperbase& s, GeomTol tol = {}) {
    std::vector<HalfSpace> hs;
    for (const auto& subset : voronoi_subsets_3d()) {
        Vec v = s.subset_vector(subset);
        Vec3 v3{v[0], v[1], v[2]};
        double n2 = dot(v3, v3);
        if (n2 < 1e-18) throw DegenerateInput("voronoi_polyhedron_3d: zero relevant vector");
        hs.push_back({v3, n2 / 2.0});
        hs.push_back({-1.0 * v3, n2 / 2.0});
    }
    return Polyhedron3(std::move(hs), tol);
}

namespace detail {

inline VoronoiCellSummary voronoi_cell_2d(const ObtuseSuperbase& s, double eps_conorm) {
    // Relevant pairs are +-v_1, +-v_2, +-v_0; the v_0 pair degenerates to a
    // corner when the basis is orthogonal.
    std::vector<Vec> rel = {s.v[1], s.v[2], s.v[0]};
    struct Line {
        double nx, ny, c;
    };
    std::vector<Line> lines;
    for (const auto& v : rel) {
        double n2 = v[0] * v[0] + v[1] * v[1];
        lines.push_back({v[0], v[1], n2 / 2.0});
        lines.push_back({-v[0], -v[1], n2 / 2.0});
    }
    std::vector<Vec> verts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double det = lines[i].nx * lines[j].ny - lines[i].ny * lines[j].nx;
            if (std::fabs(det) < 1e-12) continue;
            double x = (lines[i].c * lines[j].ny - lines[j].c * lines[i].ny) / det;
            double y = (lines[i].nx * lines[j].c - lines[j].nx * lines[i].c) / det;
            bool ok = true;
            for (const auto& l : lines)
                if (l.nx * x + l.ny * y > l.c + 1e-9) {
                    ok = false;
                    break;
                }
            if (ok) verts.push_back({x, y});
        }
    // Deduplicate and order by angle.
    std::vector<Vec> uniq;
    for (const auto& p : verts) {
        bool dup = false;
        for (const auto& q : uniq)
            if (std::hypot(p[0] - q[0], p[1] - q[1]) <= 1e-7) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(p);
    }
    std::sort(uniq.begin(), uniq.end(), [](const Vec& a, const Vec& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });

    VoronoiCellSummary out;
    out.vertices = uniq;
    double area = 0;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        const Vec& a = uniq[i];
        const Vec& b = uniq[(i + 1) % uniq.size()];
        area += 0.5 * (a[0] * b[1] - a[1] * b[0]);
    }
    out.volume = std::fabs(area);
    double dmin2 = 1e300;
    for (const auto& v : rel)
        dmin2 = std::min(dmin2, v[0] * v[0] + v[1] * v[1]);
    out.r_pack = std::sqrt(dmin2) / 2.0;
    for (const auto& p : uniq) out.r_cov = std::max(out.r_cov, std::hypot(p[0], p[1]));
    out.relevant_vectors = rel;
    out.conorms.push_back({{0, 1}, s.conorm(0, 1)});
    out.conorms.push_back({{0, 2}, s.conorm(0, 2)});
    out.conorms.push_back({{1, 2}, s.conorm(1, 2)});
    out.type = std::fabs(s.conorm(1, 2)) <= eps_conorm ? CellType::Rectangle : CellType::Hexagon;
    return out;
}

}  // namespace detail

// Voronoi cell geometry and parallelohedron classification from an obtuse
// superbase (n = 2 or 3).  eps_conorm is the "zero conorm" threshold.
inline VoronoiCellSummary voronoi_cell(const ObtuseSuperbase& s, double eps_conorm = 1e-9,
                                       GeomTol tol = {}) {
    if (s.n == 2) return detail::voronoi_cell_2d(s, eps_conorm);
    if (s.n != 3) throw UnsupportedDimension("voronoi_cell: n in {2, 3}");

    VoronoiCellSummary out;
    Polyhedron3 poly = voronoi_polyhedron_3d(s, tol);
    for (const auto& v3 : poly.vertices()) out.vertices.push_back({v3[0], v3[1], v3[2]});
    out.volume = poly.volume();
    out.r_cov = poly.max_vertex_norm();
    double dmin2 = 1e300;
    for (const auto& subset : voronoi_subsets_3d()) {
        Vec v = s.subset_vector(subset);
        out.relevant_vectors.push_back(v);
        dmin2 = std::min(dmin2, v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    out.r_pack = std::sqrt(dmin2) / 2.0;
    for (std::size_t i = 0; i <= 3; ++i)
        for (std::size_t j = i + 1; j <= 3; ++j)
            out.conorms.push_back({{i, j}, s.conorm(i, j)});
    out.type = classify_conorm_pattern_3d(s, eps_conorm);
    return out;
}

inline VoronoiCellSummary voronoi_cell(const LatticeBasis& b, double eps_conorm = 1e-9,
                                       GeomTol tol = {}) {
    return voronoi_cell(obtuse_superbase(b), eps_conorm, tol);
}

}  // namespace latbab
