#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "latbab/bounds.hpp"
#include "latbab/catalog.hpp"
#include "latbab/error_analysis.hpp"
#include "latbab/rate.hpp"
#include "latbab/rng.hpp"
#include "latbab/voronoi.hpp"

namespace latbab {

// Well-rounded family: alpha = pi/2 and
//   sin(gamma) = 0            for 0 <= beta < pi/6,
//   sin(gamma) = 1/(2 sin b)  for pi/6 <= beta <= pi/4,
// giving bases {(1,0,0),(0,1,0),(-sin b, 0, cos b)} on the prism branch and
// {(1,0,0),(0,1,0),(-sqrt(sin^2 b - 1/4), -1/2, cos b)} beyond it.
inline LatticeBasis wellrounded_basis(double beta) {
    const double pi = 3.14159265358979323846;
    if (beta < 0 || beta > pi / 4.0 + 1e-12)
        throw PreconditionViolation("wellrounded_basis: beta in [0, pi/4]");
    double sb = std::sin(beta), cb = std::cos(beta);
    MatrixR v(3);
    v(0, 0) = 1;
    v(1, 1) = 1;
    if (beta < pi / 6.0 - 1e-15) {
        v(0, 2) = -sb;
        v(1, 2) = 0;
    } else {
        v(0, 2) = -std::sqrt(std::max(0.0, sb * sb - 0.25));
        v(1, 2) = -0.5;
    }
    v(2, 2) = cb;
    return LatticeBasis(v);
}

struct Eq8Row {
    double beta = 0;
    double delta = 0;                   // pi / (6 cos beta)
    double p_e = 0;                     // polyhedral, permutation-searched
    CellType cell = CellType::Cuboid;
    double prism_p_e = -1;              // closed form on the prism branch, else -1
};

inline std::vector<Eq8Row> wellrounded_sweep(std::size_t steps) {
    const double pi = 3.14159265358979323846;
    std::vector<Eq8Row> rows;
    for (std::size_t i = 0; i <= steps; ++i) {
        double beta = pi / 4.0 * static_cast<double>(i) / static_cast<double>(steps);
        LatticeBasis b = wellrounded_basis(beta);
        ErrorProbabilityReport rep = perr_3d_polyhedral(b);
        Eq8Row row;
        row.beta = beta;
        row.delta = pi / (6.0 * std::cos(beta));
        row.p_e = rep.p_e;
        row.cell = rep.cell.value_or(CellType::Cuboid);
        if (beta <= pi / 6.0 + 1e-12)
            row.prism_p_e = perr_2d_closed_form(-std::sin(beta), std::cos(beta)).p_e;
        rows.push_back(row);
    }
    return rows;
}

struct ScatterRow {
    double delta3 = 0;
    double p_e = 0;
    CellType cell = CellType::TruncatedOctahedron;
};

// Random bases {(1,0,0),(a,b,0),(c,d,e)} with a, c in [-1/2, 0] and
// b, d, e in [-2, 2], kept when the superbase they induce is obtuse and the
// packing density exceeds 0.4; `count` accepted rows are emitted.
inline std::vector<ScatterRow> random_superbase_scatter(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ScatterRow> rows;
    while (rows.size() < count) {
        double a = rng.uniform(-0.5, 0.0);
        double c = rng.uniform(-0.5, 0.0);
        double bb = rng.uniform(-2.0, 2.0);
        double d = rng.uniform(-2.0, 2.0);
        double e = rng.uniform(-2.0, 2.0);
        MatrixR v(3);
        v(0, 0) = 1;
        v(0, 1) = a;
        v(1, 1) = bb;
        v(0, 2) = c;
        v(1, 2) = d;
        v(2, 2) = e;
        if (std::fabs(bb * e) < 1e-6) continue;
        // Obtuse superbase test on the raw basis (all conorms nonnegative).
        Vec3 v1{1, 0, 0}, v2{a, bb, 0}, v3{c, d, e};
        Vec3 v0 = -1.0 * (v1 + v2 + v3);
        Vec3 vs[4] = {v0, v1, v2, v3};
        bool obtuse = true;
        for (int i = 0; i < 4 && obtuse; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (dot(vs[i], vs[j]) > 0) {
                    obtuse = false;
                    break;
                }
        if (!obtuse) continue;
        LatticeBasis basis(v);
        if (packing_density(basis) <= 0.4) continue;
        ErrorProbabilityReport rep = perr_3d_polyhedral(basis);
        rows.push_back({rep.delta3, rep.p_e, rep.cell.value_or(CellType::TruncatedOctahedron)});
    }
    return rows;
}

struct Fig3Row {
    int m = 0;
    double a = 0;  // 1/m
    double h_u2 = 0;
    double h_u1s1 = 0;
    double h_s1_given_u1 = 0;  // the extra-information component
    double sum_rate = 0;
    double bound = 0;
};

inline LatticeBasis fig3_basis(int m) {
    // {(1,0), (1/m, sqrt(1 - 1/m^2))}; the second entry is (1/m) sqrt(m^2-1).
    ExactColumns cols = {
        {detail::se(1), detail::se(0)},
        {detail::se(1, m), detail::se_sqrt(1, m, static_cast<long long>(m) * m - 1)},
    };
    return LatticeBasis(cols);
}

inline std::vector<Fig3Row> fig3_sweep(int m_min, int m_max, double a_width = 5.0) {
    std::vector<Fig3Row> rows;
    for (int m = m_min; m <= m_max; ++m) {
        LatticeBasis b = fig3_basis(m);
        RateReport rep = rate_exact_uniform(b, a_width, std::max<std::int64_t>(1000000, m + 1));
        Fig3Row row;
        row.m = m;
        row.a = 1.0 / static_cast<double>(m);
        row.h_u2 = rep.sensors[1].h_joint;
        row.h_u1s1 = rep.sensors[0].h_joint;
        row.h_s1_given_u1 = rep.sensors[0].h_s_given_u;
        row.sum_rate = rep.sum_rate;
        row.bound = rep.bound_total;
        rows.push_back(row);
    }
    return rows;
}

struct Table1Row {
    std::string name;
    CellType cell = CellType::Cuboid;
    double delta3 = 0;
    double p_e = 0;
};

inline std::vector<Table1Row> run_table1() {
    std::vector<Table1Row> rows;
    for (const char* name : {"Z^3", "hp", "FCC", "hrd", "BCC"}) {
        CatalogEntry e = catalog_lookup(name);
        ErrorProbabilityReport rep = perr_3d_polyhedral(*e.basis);
        rows.push_back({name, rep.cell.value_or(CellType::Cuboid), rep.delta3, rep.p_e});
    }
    return rows;
}

struct Fig7Row {
    double delta2 = 0;
    double a_star = 0;
    double p_e = 0;
};

inline std::vector<Fig7Row> fig7_sweep(std::size_t steps) {
    const double pi = 3.14159265358979323846;
    const double lo = pi / 4.0, hi = pi / (2.0 * std::sqrt(3.0));
    std::vector<Fig7Row> rows;
    for (std::size_t i = 0; i <= steps; ++i) {
        double d = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
        DensityMinimizer m = min_perr_given_density_2d(d);
        rows.push_back({d, m.a_star, m.report.p_e});
    }
    return rows;
}

struct Fig8Row {
    double sigma = 0;
    double delta2 = 0;
    double a = 0;
    double b = 0;
    double p_e = 0;       // full Monte Carlo estimate
    double se = 0;
    double t_term_pc = 0; // dominant-term success estimate
    double t_term_se = 0;
};

// Gaussian counterpart of the density sweep: for each density the
// density-constrained minimizing basis is sampled at each noise level.
inline std::vector<Fig8Row> fig8_sweep(const Vec& sigmas, std::size_t density_steps,
                                       std::size_t samples, std::uint64_t seed) {
    const double pi = 3.14159265358979323846;
    const double lo = pi / 4.0, hi = pi / (2.0 * std::sqrt(3.0));
    std::vector<Fig8Row> rows;
    std::uint64_t stream = 0;
    for (double sigma : sigmas) {
        for (std::size_t i = 0; i <= density_steps; ++i) {
            double d = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(density_steps);
            DensityMinimizer m = min_perr_given_density_2d(d);
            MatrixR v(2);
            v(0, 0) = 1;
            v(0, 1) = m.a_star;
            v(1, 1) = m.b;
            LatticeBasis basis(v);
            ErrorProbabilityReport rep =
                perr_mc_gaussian(basis, sigma, samples, seed ^ (0x9e37u + stream++));
            Fig8Row row;
            row.sigma = sigma;
            row.delta2 = d;
            row.a = m.a_star;
            row.b = m.b;
            row.p_e = rep.p_e;
            row.se = rep.uncertainty;
            row.t_term_pc = rep.t_term_pc.value_or(0.0);
            row.t_term_se = rep.t_term_se;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace latbab
