#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "latbab/babai.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/rng.hpp"
#include "latbab/voronoi.hpp"

namespace latbab {

struct ErrorProbabilityReport {
    enum class Method {
        ClosedForm,
        Polyhedral,
        MonteCarlo,
        ChebyshevBound,
        ExclusionBound,
        CombinedBound,
    };
    double p_e = 0;
    double p_c = 1;
    Method method = Method::ClosedForm;
    double uncertainty = 0;   // standard error for Monte Carlo, 0 for exact
    bool bound_on_pc = false; // p_c is an upper bound rather than a value

    // Polyhedral extras.
    std::vector<std::size_t> permutation;  // column order achieving the minimum
    std::vector<std::pair<std::vector<std::size_t>, double>> per_permutation;
    double delta3 = 0;
    std::optional<CellType> cell;

    // Closed-form extras: Voronoi vertices of the 2-D cell.
    std::vector<Vec> cell_vertices;

    // Gaussian Monte Carlo extras: the dominant-term estimate
    // Prob(babai(Z) = 0 and closest(Z) = 0) with its standard error.
    std::optional<double> t_term_pc;
    double t_term_se = 0;
};

inline const char* perr_method_name(ErrorProbabilityReport::Method m) {
    using M = ErrorProbabilityReport::Method;
    switch (m) {
        case M::ClosedForm: return "closed-form";
        case M::Polyhedral: return "polyhedral";
        case M::MonteCarlo: return "monte-carlo";
        case M::ChebyshevBound: return "chebyshev-bound";
        case M::ExclusionBound: return "exclusion-bound";
        case M::CombinedBound: return "combined-bound";
    }
    return "?";
}

// P_e = F(a,b) = (-a - a^2) / (4 b^2) for a Minkowski-reduced basis
// {(1,0),(a,b)} with -1/2 <= a <= 0 and a^2 + b^2 >= 1 (basis angle between
// pi/2 and 2pi/3).  Also returns the six Voronoi-cell vertices
// +-(1/2, (a^2+b^2+a)/(2b)), +-(-1/2, (a^2+b^2+a)/(2b)),
// +-((2a+1)/2, (-a^2+b^2-a)/(2b)).
inline ErrorProbabilityReport perr_2d_closed_form(double a, double b) {
    const double tol = 1e-12;
    if (!(b > 0)) throw PreconditionViolation("perr_2d_closed_form: requires b > 0");
    if (a < -0.5 - tol || a > tol)
        throw PreconditionViolation("perr_2d_closed_form: Minkowski condition -1/2 <= a <= 0");
    if (a * a + b * b < 1.0 - tol)
        throw PreconditionViolation("perr_2d_closed_form: angle condition a^2 + b^2 >= 1");
    a = std::min(0.0, std::max(-0.5, a));

    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::ClosedForm;
    rep.p_e = std::max(0.0, (-a - a * a) / (4.0 * b * b));
    rep.p_c = 1.0 - rep.p_e;

    double h = (a * a + b * b + a) / (2.0 * b);
    double w = (-a * a + b * b - a) / (2.0 * b);
    double x3 = (2.0 * a + 1.0) / 2.0;
    rep.cell_vertices = {{0.5, h}, {-0.5, h}, {-x3, w}, {-0.5, -h}, {0.5, -h}, {x3, -w}};
    return rep;
}

// Minimizer of F at fixed packing density: a* = 0 for
// Delta <= pi/4, a* = -sqrt(1 - (pi/(4 Delta))^2) up to the hexagonal
// density pi/(2 sqrt(3)); the cell height is b = pi/(4 Delta).
struct DensityMinimizer {
    double a_star = 0;
    double b = 0;
    ErrorProbabilityReport report;
};

inline DensityMinimizer min_perr_given_density_2d(double delta2) {
    const double pi = 3.14159265358979323846;
    const double dmax = pi / (2.0 * std::sqrt(3.0));
    if (!(delta2 > 0) || delta2 > dmax + 1e-12)
        throw DensityOutOfRange("min_perr_given_density_2d: need 0 < Delta2 <= pi/(2 sqrt(3))");
    DensityMinimizer out;
    out.b = pi / (4.0 * delta2);
    if (delta2 <= pi / 4.0 + 1e-15) {
        out.a_star = 0.0;
    } else {
        out.a_star = -std::sqrt(std::max(0.0, 1.0 - out.b * out.b));
        out.a_star = std::max(-0.5, out.a_star);
    }
    out.report = perr_2d_closed_form(out.a_star, out.b);
    return out;
}

namespace detail {

// Partitions `samples` across `workers` independent seeded streams, runs
// them on real threads, and sums the per-worker tallies.  The tallies are
// keyed by worker, so the result depends only on (seed, workers).
template <typename PerSample>
inline std::vector<std::size_t> run_partitioned(std::size_t samples, std::size_t workers,
                                                std::uint64_t seed, std::size_t n_counters,
                                                PerSample&& per_sample) {
    if (workers == 0) workers = 1;
    std::vector<std::vector<std::size_t>> tallies(workers,
                                                  std::vector<std::size_t>(n_counters, 0));
    auto run_worker = [&](std::size_t w) {
        std::size_t chunk = samples / workers + (w < samples % workers ? 1 : 0);
        Rng rng = Rng::worker_stream(seed, w);
        for (std::size_t it = 0; it < chunk; ++it) per_sample(rng, tallies[w]);
    };
    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }
    std::vector<std::size_t> total(n_counters, 0);
    for (const auto& t : tallies)
        for (std::size_t i = 0; i < n_counters; ++i) total[i] += t[i];
    return total;
}

}  // namespace detail

// One permutation of the 3-D pipeline: QR, Babai box, Voronoi cell in the
// rotated frame, intersection volume ratio.
namespace detail {

inline double perr_3d_single(const LatticeBasis& permuted, GeomTol tol, double eps_conorm,
                             CellType* cell_out, double* rcov_out) {
    const MatrixR& r = permuted.triangular();
    Vec3 half{r(0, 0) / 2.0, r(1, 1) / 2.0, r(2, 2) / 2.0};
    Polyhedron3 box = Polyhedron3::axis_box(half, tol);
    LatticeBasis rotated(r);
    ObtuseSuperbase sb = obtuse_superbase(rotated);
    Polyhedron3 cell = voronoi_polyhedron_3d(sb, tol);
    if (cell_out) *cell_out = classify_conorm_pattern_3d(sb, eps_conorm);
    if (rcov_out) *rcov_out = cell.max_vertex_norm();
    double pc = intersect(cell, box).volume() / box.volume();
    return std::min(1.0, std::max(0.0, 1.0 - pc));
}

}  // namespace detail

// Error probability of a 3-D lattice by exact polyhedral volumes, searching
// all 3! column orderings when requested and reporting the minimum (the
// Babai cell depends on the ordering; the Voronoi cell does not).
inline ErrorProbabilityReport perr_3d_polyhedral(const LatticeBasis& b,
                                                 bool search_permutations = true,
                                                 GeomTol tol = {}, double eps_conorm = 1e-9) {
    if (b.dim() != 3) throw UnsupportedDimension("perr_3d_polyhedral: n = 3 only");

    std::vector<std::vector<std::size_t>> perms;
    if (search_permutations) {
        std::vector<std::size_t> p = {0, 1, 2};
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    } else {
        perms.push_back({0, 1, 2});
    }

    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::Polyhedral;
    rep.p_e = 2.0;  // above any admissible value
    CellType cell = CellType::Cuboid;
    for (const auto& perm : perms) {
        LatticeBasis pb = b.permuted(perm);
        CellType this_cell;
        double pe = detail::perr_3d_single(pb, tol, eps_conorm, &this_cell, nullptr);
        rep.per_permutation.push_back({perm, pe});
        if (pe < rep.p_e) {
            rep.p_e = pe;
            rep.permutation = perm;
        }
        cell = this_cell;  // lattice invariant: identical for every ordering
    }
    rep.p_c = 1.0 - rep.p_e;
    rep.cell = cell;
    double dmin = b.min_distance();
    rep.delta3 = 3.14159265358979323846 / 6.0 * dmin * dmin * dmin / b.volume();
    return rep;
}

// Uniform-case Monte Carlo: x uniform in the Babai box of the triangular
// form, success when the exact nearest point is the origin.  The loop is
// split across `workers` seeded streams; the result is identical for a fixed
// (seed, workers) pair regardless of scheduling.
inline ErrorProbabilityReport perr_mc_uniform(const LatticeBasis& b, std::size_t samples,
                                              std::uint64_t seed, std::size_t workers = 1) {
    if (b.dim() > kMaxEnumerationDim)
        throw DimensionTooLarge("perr_mc_uniform: n <= 24");
    const MatrixR& r = b.triangular();
    const std::size_t n = b.dim();
    auto totals = detail::run_partitioned(
        samples, workers, seed, 1, [&](Rng& rng, std::vector<std::size_t>& tally) {
            Vec x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = (rng.uniform01() - 0.5) * r(i, i);
            CvpResult nearest = closest_point_triangular(r, x);
            bool zero = true;
            for (auto c : nearest.u)
                if (c != 0) { zero = false; break; }
            if (zero) ++tally[0];
        });
    std::size_t successes = totals[0];
    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::MonteCarlo;
    rep.p_c = static_cast<double>(successes) / static_cast<double>(samples);
    rep.p_e = 1.0 - rep.p_c;
    rep.uncertainty = std::sqrt(rep.p_c * (1.0 - rep.p_c) / static_cast<double>(samples));
    return rep;
}

// Gaussian-case Monte Carlo: z ~ N(0, sigma^2 I).  The full success event is
// babai(z) = closest(z) (the whole sum in the success-probability expansion);
// the dominant-term estimate additionally requires both points to be 0.
inline ErrorProbabilityReport perr_mc_gaussian(const LatticeBasis& b, double sigma,
                                               std::size_t samples, std::uint64_t seed,
                                               std::size_t workers = 1) {
    if (!(sigma > 0)) throw PreconditionViolation("perr_mc_gaussian: sigma > 0");
    if (b.dim() > kMaxEnumerationDim)
        throw DimensionTooLarge("perr_mc_gaussian: n <= 24");
    const MatrixR& r = b.triangular();
    const std::size_t n = b.dim();
    auto totals = detail::run_partitioned(
        samples, workers, seed, 2, [&](Rng& rng, std::vector<std::size_t>& tally) {
            Vec z(n);
            for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal(sigma);
            CvpResult bp = babai_nearest_plane(r, z);
            CvpResult np = closest_point_triangular(r, z);
            if (bp.u == np.u) {
                ++tally[0];
                bool zero = true;
                for (auto c : np.u)
                    if (c != 0) { zero = false; break; }
                if (zero) ++tally[1];
            }
        });
    std::size_t agree = totals[0], t_term = totals[1];
    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::MonteCarlo;
    rep.p_c = static_cast<double>(agree) / static_cast<double>(samples);
    rep.p_e = 1.0 - rep.p_c;
    rep.uncertainty = std::sqrt(rep.p_c * (1.0 - rep.p_c) / static_cast<double>(samples));
    double t = static_cast<double>(t_term) / static_cast<double>(samples);
    rep.t_term_pc = t;
    rep.t_term_se = std::sqrt(t * (1.0 - t) / static_cast<double>(samples));
    return rep;
}

}  // namespace latbab
