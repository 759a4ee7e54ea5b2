#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "latbab/dbp.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"

namespace latbab {

struct SensorRate {
    double h_joint = 0;       // H(U~_i, S_i) in bits
    double h_u = 0;           // H(U~_i)
    double h_s_given_u = 0;   // H(S_i | U~_i)
    double se = 0;            // jackknife standard error of h_joint (MC only)
};

struct RateReport {
    enum class Method { Exact, MonteCarlo };
    Method method = Method::Exact;
    std::size_t samples = 0;
    std::vector<SensorRate> sensors;  // index m = 0..n-1
    double sum_rate = 0;              // sum of the per-sensor joint entropies
    // Large-A decomposition pieces: n log2 A - log2|det V| + sum log2 q_i.
    double bound_n_log2_a = 0;
    double bound_log2_det = 0;
    double bound_sum_log2_q = 0;
    double bound_total = 0;
    std::vector<long long> q;  // per-row q_m
};

namespace detail {

inline double entropy_bits(const std::vector<double>& probs) {
    double h = 0;
    for (double p : probs)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

// Plug-in entropy of a histogram plus its delete-one jackknife standard
// error (grouped by symbol, so it is O(#distinct symbols)).
template <typename Map>
inline std::pair<double, double> plug_in_entropy(const Map& counts, std::size_t total) {
    const double nd = static_cast<double>(total);
    double h = 0;
    for (const auto& [key, c] : counts) {
        double p = static_cast<double>(c) / nd;
        h -= p * std::log2(p);
    }
    if (total < 2) return {h, 0.0};
    // Entropy with one observation of each symbol removed.
    double mean = 0;
    std::vector<std::pair<double, double>> h_minus;  // (count, H_{-j})
    for (const auto& [key, c] : counts) {
        double hm = 0;
        for (const auto& [key2, c2] : counts) {
            double cc = static_cast<double>(c2) - (key2 == key ? 1.0 : 0.0);
            if (cc <= 0) continue;
            double p = cc / (nd - 1.0);
            hm -= p * std::log2(p);
        }
        h_minus.push_back({static_cast<double>(c), hm});
        mean += static_cast<double>(c) * hm;
    }
    mean /= nd;
    double var = 0;
    for (const auto& [c, hm] : h_minus) var += c * (hm - mean) * (hm - mean);
    var *= (nd - 1.0) / nd;
    return {h, std::sqrt(var)};
}

}  // namespace detail

// Exact per-sensor law of (U~, S) for a two-dimensional lattice under a
// product-uniform source on [-A/2, A/2)^2.  Both variables at sensor m are
// functions of x_m alone, so each law is a finite partition of the interval
// t = x/v_mm + 1/2 into integer cells subdivided at the S_m breakpoints
// s/q_m; entropies follow from the exact segment lengths.
inline RateReport rate_exact_uniform(const LatticeBasis& b, double a_width,
                                     std::int64_t max_den = 1000000) {
    if (b.dim() != 2)
        throw UnsupportedForExact("rate_exact_uniform: only n = 2 is supported");
    const MatrixR& r = b.triangular();
    auto rows = ratio_rows(b, max_den);
    SourceSpec src = SourceSpec::uniform(a_width);

    RateReport rep;
    rep.method = RateReport::Method::Exact;
    double log2det = std::log2(b.volume());

    for (std::size_t m = 0; m < 2; ++m) {
        ReachableSet set = reachable_set(b, m, src, rows);
        if (set.provenance != ReachableSet::Provenance::ExactEnumeration)
            throw UnsupportedForExact("rate_exact_uniform: reachable set not exact");
        const double v = r(m, m);
        const double t_lo = (-a_width / 2.0) / v + 0.5;
        const double t_hi = (a_width / 2.0) / v + 0.5;
        const double span = t_hi - t_lo;
        long long q = set.q.convert_to<long long>();

        std::map<std::int64_t, double> law_u;
        std::map<std::pair<std::int64_t, long long>, double> law_joint;
        std::int64_t k_lo = static_cast<std::int64_t>(std::floor(t_lo));
        std::int64_t k_hi = static_cast<std::int64_t>(std::floor(t_hi)) + 1;
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            double cell_lo = std::max(t_lo, static_cast<double>(k));
            double cell_hi = std::min(t_hi, static_cast<double>(k) + 1.0);
            if (cell_hi <= cell_lo) continue;
            law_u[k] += (cell_hi - cell_lo) / span;
            if (q == 1) {
                law_joint[{k, 0}] += (cell_hi - cell_lo) / span;
                continue;
            }
            // Subdivide at phi = s/q for s in S_m; on [s_i/q, s_{i+1}/q) the
            // encoder emits s_i, and below the smallest element the sentinel.
            std::vector<long long> ss = set.values;
            std::vector<double> breaks;
            std::vector<long long> vals;
            if (ss.empty() || ss.front() > 0) {
                breaks.push_back(0.0);
                vals.push_back(-1);
            }
            for (long long s : ss) {
                breaks.push_back(static_cast<double>(s) / static_cast<double>(q));
                vals.push_back(s);
            }
            breaks.push_back(1.0);
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
                double seg_lo = std::max(cell_lo, static_cast<double>(k) + breaks[i]);
                double seg_hi = std::min(cell_hi, static_cast<double>(k) + breaks[i + 1]);
                if (seg_hi <= seg_lo) continue;
                law_joint[{k, vals[i]}] += (seg_hi - seg_lo) / span;
            }
        }

        SensorRate sr;
        std::vector<double> pu, pj;
        for (const auto& [k, p] : law_u) pu.push_back(p);
        for (const auto& [k, p] : law_joint) pj.push_back(p);
        sr.h_u = detail::entropy_bits(pu);
        sr.h_joint = detail::entropy_bits(pj);
        sr.h_s_given_u = std::max(0.0, sr.h_joint - sr.h_u);
        rep.sensors.push_back(sr);
        rep.q.push_back(q);
        rep.sum_rate += sr.h_joint;
    }

    rep.bound_n_log2_a = 2.0 * std::log2(a_width);
    rep.bound_log2_det = log2det;
    for (std::size_t m = 0; m + 1 < 2; ++m)
        rep.bound_sum_log2_q += std::log2(static_cast<double>(rep.q[m]));
    rep.bound_total = rep.bound_n_log2_a - rep.bound_log2_det + rep.bound_sum_log2_q;
    return rep;
}

// Plug-in rate estimate for any dimension/source: empirical joint law of
// (U~_m, S_m) per sensor from seeded samples.
inline RateReport rate_monte_carlo(const LatticeBasis& b, const SourceSpec& src,
                                   std::size_t samples, std::uint64_t seed,
                                   std::int64_t max_den = 1000000) {
    const std::size_t n = b.dim();
    const MatrixR& r = b.triangular();
    auto rows = ratio_rows(b, max_den);
    std::vector<ReachableSet> sets;
    for (std::size_t m = 0; m < n; ++m)
        sets.push_back(reachable_set(b, m, src, rows, 10000000, true, seed ^ (m + 1)));

    std::vector<std::map<std::pair<std::int64_t, long long>, std::size_t>> joint(n);
    std::vector<std::map<std::int64_t, std::size_t>> marg(n);
    Rng rng(seed);
    for (std::size_t it = 0; it < samples; ++it) {
        Vec x = src.sample(rng, n);
        for (std::size_t m = 0; m < n; ++m) {
            DbpMessage msg = encode(m, x[m], r(m, m), sets[m]);
            ++joint[m][{msg.u_tilde, msg.s}];
            ++marg[m][msg.u_tilde];
        }
    }

    RateReport rep;
    rep.method = RateReport::Method::MonteCarlo;
    rep.samples = samples;
    double nd = static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        auto [hj, se] = detail::plug_in_entropy(joint[m], samples);
        auto [hu, se_u] = detail::plug_in_entropy(marg[m], samples);
        (void)se_u;
        SensorRate sr;
        sr.h_joint = hj;
        sr.h_u = hu;
        sr.h_s_given_u = std::max(0.0, hj - hu);
        sr.se = se;
        rep.sensors.push_back(sr);
        rep.q.push_back(rows[m].q.convert_to<long long>());
        rep.sum_rate += sr.h_joint;
    }
    rep.bound_n_log2_a =
        src.kind == SourceSpec::Kind::Uniform ? nd * std::log2(src.a) : 0.0;
    rep.bound_log2_det = std::log2(b.volume());
    for (std::size_t m = 0; m + 1 < n; ++m)
        rep.bound_sum_log2_q += std::log2(static_cast<double>(rep.q[m]));
    rep.bound_total = rep.bound_n_log2_a - rep.bound_log2_det + rep.bound_sum_log2_q;
    return rep;
}

}  // namespace latbab
