#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "latbab/errors.hpp"
#include "latbab/linalg.hpp"

namespace latbab {

// Closed half-space { x : normal . x <= offset } with unit normal.
struct HalfSpace {
    Vec3 normal;
    double offset;
};

struct GeomTol {
    double eps_feas = 1e-9;   // absolute feasibility slack on unit-scale lattices
    double eps_dedup = 1e-7;  // relative vertex deduplication tolerance
};

struct VolumeResult {
    double volume = 0.0;
    bool degenerate = false;  // inputs were (near-)coplanar
};

namespace detail {

inline void dedup_points(std::vector<Vec3>& pts, double eps_rel) {
    std::vector<Vec3> out;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : out) {
            double tol = eps_rel * std::max(1.0, norm(q));
            if (norm(p - q) <= tol) { dup = true; break; }
        }
        if (!dup) out.push_back(p);
    }
    pts.swap(out);
}

// Intersection point of three half-space boundary planes; false if the
// normals are (near-)linearly dependent.
inline bool plane_triple_point(const HalfSpace& a, const HalfSpace& b, const HalfSpace& c,
                               Vec3& out) {
    Vec3 bc = cross(b.normal, c.normal);
    double det = dot(a.normal, bc);
    if (std::fabs(det) < 1e-10) return false;
    Vec3 ca = cross(c.normal, a.normal);
    Vec3 ab = cross(a.normal, b.normal);
    out = (1.0 / det) * (a.offset * bc + b.offset * ca + c.offset * ab);
    return true;
}

inline bool feasible(const std::vector<HalfSpace>& hs, const Vec3& p, double eps) {
    for (const auto& h : hs)
        if (dot(h.normal, p) > h.offset + eps) return false;
    return true;
}

// Vertices of one face (those lying on the boundary plane), ordered by angle
// around the face centroid.
inline std::vector<Vec3> face_cycle(const HalfSpace& h, const std::vector<Vec3>& verts,
                                    double eps) {
    std::vector<Vec3> on;
    for (const auto& v : verts)
        if (std::fabs(dot(h.normal, v) - h.offset) <= eps) on.push_back(v);
    if (on.size() < 3) return {};
    Vec3 c{0, 0, 0};
    for (const auto& v : on) c = c + v;
    c = (1.0 / static_cast<double>(on.size())) * c;
    // Orthonormal frame in the face plane.
    Vec3 t1 = std::fabs(h.normal[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    t1 = t1 - dot(t1, h.normal) * h.normal;
    t1 = (1.0 / norm(t1)) * t1;
    Vec3 t2 = cross(h.normal, t1);
    std::sort(on.begin(), on.end(), [&](const Vec3& a, const Vec3& b) {
        Vec3 da = a - c, db = b - c;
        return std::atan2(dot(da, t2), dot(da, t1)) < std::atan2(dot(db, t2), dot(db, t1));
    });
    return on;
}

// Volume of the convex body described by (supporting planes, vertices), by
// summing face pyramids over the interior centroid.
inline double volume_from_faces(const std::vector<HalfSpace>& hs,
                                const std::vector<Vec3>& verts, double eps) {
    if (verts.size() < 4) return 0.0;
    Vec3 c{0, 0, 0};
    for (const auto& v : verts) c = c + v;
    c = (1.0 / static_cast<double>(verts.size())) * c;
    double vol = 0.0;
    for (const auto& h : hs) {
        auto cyc = face_cycle(h, verts, eps);
        if (cyc.size() < 3) continue;
        double h_dist = h.offset - dot(h.normal, c);
        if (h_dist <= 0) continue;
        Vec3 fc{0, 0, 0};
        for (const auto& v : cyc) fc = fc + v;
        fc = (1.0 / static_cast<double>(cyc.size())) * fc;
        double area = 0.0;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vec3& a = cyc[i];
            const Vec3& b = cyc[(i + 1) % cyc.size()];
            area += 0.5 * norm(cross(a - fc, b - fc));
        }
        vol += area * h_dist / 3.0;
    }
    return vol;
}

}  // namespace detail

// Bounded convex polyhedron built from half-spaces; vertices and volume are
// computed once at construction and cached.
class Polyhedron3 {
public:
    Polyhedron3() = default;

    explicit Polyhedron3(std::vector<HalfSpace> halfspaces, GeomTol tol = {})
        : tol_(tol) {
        for (auto h : halfspaces) {
            double len = norm(h.normal);
            if (len < 1e-14) throw DegenerateInput("Polyhedron3: zero normal");
            h.normal = (1.0 / len) * h.normal;
            h.offset /= len;
            bool merged = false;
            for (auto& kept : hs_) {
                if (norm(kept.normal - h.normal) <= 1e-9) {
                    kept.offset = std::min(kept.offset, h.offset);  // keep the tighter one
                    merged = true;
                    break;
                }
            }
            if (!merged) hs_.push_back(h);
        }
        if (hs_.size() < 4)
            throw DegenerateInput("Polyhedron3: need at least 4 half-spaces");
        enumerate_vertices();
        volume_ = detail::volume_from_faces(hs_, verts_, face_eps());
    }

    static Polyhedron3 axis_box(const Vec3& half_sizes, GeomTol tol = {}) {
        std::vector<HalfSpace> hs;
        for (int i = 0; i < 3; ++i) {
            Vec3 n{0, 0, 0};
            n[i] = 1;
            hs.push_back({n, half_sizes[i]});
            n[i] = -1;
            hs.push_back({n, half_sizes[i]});
        }
        return Polyhedron3(std::move(hs), tol);
    }

    const std::vector<HalfSpace>& halfspaces() const { return hs_; }
    const std::vector<Vec3>& vertices() const { return verts_; }
    double volume() const { return volume_; }
    bool empty() const { return verts_.empty(); }
    const GeomTol& tol() const { return tol_; }

    double max_vertex_norm() const {
        double m = 0;
        for (const auto& v : verts_) m = std::max(m, norm(v));
        return m;
    }

    // Number of half-spaces supporting an actual 2-face.
    std::size_t face_count() const {
        std::size_t cnt = 0;
        for (const auto& h : hs_) {
            auto cyc = detail::face_cycle(h, verts_, face_eps());
            if (cyc.size() < 3) continue;
            Vec3 fc{0, 0, 0};
            for (const auto& v : cyc) fc = fc + v;
            fc = (1.0 / static_cast<double>(cyc.size())) * fc;
            double area = 0.0;
            for (std::size_t i = 0; i < cyc.size(); ++i)
                area += 0.5 * norm(cross(cyc[i] - fc, cyc[(i + 1) % cyc.size()] - fc));
            if (area > 1e-12) ++cnt;
        }
        return cnt;
    }

private:
    double face_eps() const {
        double scale = 1.0;
        for (const auto& v : verts_) scale = std::max(scale, norm(v));
        return std::max(1e-8, 3.0 * tol_.eps_dedup * scale);
    }

    void enumerate_vertices() {
        // Brute-force plane triples plus a large bounding-box probe: a feasible
        // point involving a probe plane means the region escapes to the box.
        constexpr double kProbe = 1e6;
        std::vector<HalfSpace> all = hs_;
        const std::size_t m = hs_.size();
        for (int i = 0; i < 3; ++i) {
            Vec3 n{0, 0, 0};
            n[i] = 1;
            all.push_back({n, kProbe});
            n[i] = -1;
            all.push_back({n, kProbe});
        }
        std::size_t independent = 0;
        std::vector<Vec3> pts;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                for (std::size_t k = j + 1; k < all.size(); ++k) {
                    Vec3 p;
                    if (!detail::plane_triple_point(all[i], all[j], all[k], p)) continue;
                    if (i < m && j < m && k < m) ++independent;
                    if (!detail::feasible(all, p, tol_.eps_feas)) continue;
                    if (k >= m)  // involves a probe plane
                        throw Unbounded("Polyhedron3: unbounded half-space intersection");
                    pts.push_back(p);
                }
        if (independent == 0)
            throw DegenerateInput("Polyhedron3: no three independent planes");
        detail::dedup_points(pts, tol_.eps_dedup);
        verts_ = std::move(pts);
    }

    std::vector<HalfSpace> hs_;
    std::vector<Vec3> verts_;
    double volume_ = 0.0;
    GeomTol tol_;
};

inline std::vector<Vec3> halfspace_vertices(const Polyhedron3& p) { return p.vertices(); }

// Convex-hull volume of a point set: supporting planes are recovered by
// scanning point triples, then faces are fanned about the centroid.  O(V^4),
// fine at desk scale.
inline VolumeResult polytope_volume(const std::vector<Vec3>& points_in) {
    if (points_in.size() < 4)
        throw DegenerateInput("polytope_volume: need at least 4 points");
    std::vector<Vec3> pts = points_in;
    detail::dedup_points(pts, 1e-12);

    double scale = 0;
    for (const auto& p : pts) scale = std::max(scale, norm(p));
    const double eps = 1e-9 * std::max(1.0, scale);

    std::vector<HalfSpace> planes;
    bool noncoplanar = false;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
                double len = norm(nrm);
                if (len < 1e-12 * std::max(1.0, scale * scale)) continue;
                nrm = (1.0 / len) * nrm;
                double c = dot(nrm, pts[i]);
                bool all_below = true, all_above = true;
                for (const auto& p : pts) {
                    double d = dot(nrm, p) - c;
                    if (d > eps) all_below = false;
                    if (d < -eps) all_above = false;
                    if (std::fabs(d) > eps) noncoplanar = true;
                }
                if (!all_below && !all_above) continue;
                HalfSpace h = all_below ? HalfSpace{nrm, c} : HalfSpace{-1.0 * nrm, -c};
                bool dup = false;
                for (const auto& q : planes)
                    if (norm(q.normal - h.normal) <= 1e-7 && std::fabs(q.offset - h.offset) <= eps) {
                        dup = true;
                        break;
                    }
                if (!dup) planes.push_back(h);
            }

    if (!noncoplanar || planes.size() < 4) return {0.0, true};
    return {detail::volume_from_faces(planes, pts, eps * 10), false};
}

// Intersection as the union of the two constraint sets, re-verticized.  An
// empty or flat intersection is returned with volume zero rather than thrown.
inline Polyhedron3 intersect(const Polyhedron3& p, const Polyhedron3& q) {
    std::vector<HalfSpace> hs = p.halfspaces();
    hs.insert(hs.end(), q.halfspaces().begin(), q.halfspaces().end());
    return Polyhedron3(std::move(hs), p.tol());
}

}  // namespace latbab
