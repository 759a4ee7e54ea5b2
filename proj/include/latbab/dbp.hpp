#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latbab/babai.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/rational.hpp"
#include "latbab/rng.hpp"
#include "latbab/source_spec.hpp"

namespace latbab {

// Row m of the protocol's rational bookkeeping: the exact ratios
// p_ml/q_ml = v_ml/v_mm for l > m with v_ml != 0, and q_m = lcm of the
// denominators (q = 1 for the last row).  Indices are 0-based.
struct RationalRatioRow {
    std::size_t m = 0;
    std::vector<std::pair<std::size_t, Rational>> ratios;  // (l, p/q)
    BigInt q = 1;
};

namespace detail {

// Exact ratio of two triangular entries when the basis carries exact entries
// in (already triangular) form; falls back to continued-fraction recovery
// from the double-precision triangular form.
inline Rational entry_ratio(const LatticeBasis& b, std::size_t m, std::size_t l,
                            std::int64_t max_den, double tol) {
    if (b.exact() && b.is_triangular_positive()) {
        const ExactColumns& cols = *b.exact();
        auto r = ScalarExpr::exact_ratio(cols[l][m], cols[m][m]);
        if (r) return *r;
    }
    const MatrixR& r = b.triangular();
    try {
        return rational_reconstruct(r(m, l) / r(m, m), max_den, tol);
    } catch (const NoRationalWithinTolerance&) {
        throw NoRationalWithinTolerance(
            "ratio_rows: entry ratio v[" + std::to_string(m) + "][" + std::to_string(l) +
            "] / v[" + std::to_string(m) + "][" + std::to_string(m) +
            "] has no rational form with denominator <= " + std::to_string(max_den));
    }
}

}  // namespace detail

inline std::vector<RationalRatioRow> ratio_rows(const LatticeBasis& b,
                                                std::int64_t max_den = 1000000,
                                                double tol = 1e-9) {
    const std::size_t n = b.dim();
    const MatrixR& r = b.triangular();
    std::vector<RationalRatioRow> rows(n);
    for (std::size_t m = 0; m < n; ++m) {
        rows[m].m = m;
        rows[m].q = 1;
        for (std::size_t l = m + 1; l < n; ++l) {
            if (std::fabs(r(m, l)) < 1e-14 * std::fabs(r(m, m))) continue;
            Rational ratio = detail::entry_ratio(b, m, l, max_den, tol);
            if (ratio.is_zero()) continue;
            rows[m].q = lcm(rows[m].q, ratio.den());
            rows[m].ratios.push_back({l, ratio});
        }
    }
    return rows;
}

// The set S_m of values of {nu_m} q_m realizable with positive probability.
struct ReachableSet {
    enum class Provenance { ExactEnumeration, Sampled, Full };
    std::vector<long long> values;  // sorted ascending, subset of {0..q-1}
    Provenance provenance = Provenance::Full;
    BigInt q = 1;

    bool contains(long long s) const {
        return std::binary_search(values.begin(), values.end(), s);
    }
    // Largest element <= cap, or -1 when none (possible when 0 is not
    // realizable; the decoder branch handles the sentinel uniformly).
    long long max_leq(long long cap) const {
        auto it = std::upper_bound(values.begin(), values.end(), cap);
        if (it == values.begin()) return -1;
        return *(it - 1);
    }
};

namespace detail {

// {sum_l u_l p_ml/q_ml} * q_m as an exact integer in [0, q_m).
inline BigInt fractional_numerator(const RationalRatioRow& row,
                                   const std::vector<std::int64_t>& u) {
    BigInt num = 0;
    for (const auto& [l, ratio] : row.ratios)
        num += BigInt(u[l]) * ratio.num() * (row.q / ratio.den());
    BigInt f = num % row.q;
    if (f < 0) f += row.q;
    return f;
}

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

}  // namespace detail

// Computes S_m for a product source.  Uniform sources are enumerated exactly:
// candidate coefficient ranges (padded by one cell on each side) are walked
// depth-first, keeping only coefficients whose preimage interval inside the
// source box has positive measure.  Gaussian sources have full support, so
// every residue is realizable.  If the enumeration exceeds `budget` visited
// nodes, the set is estimated from `sample_count` seeded samples instead.
inline ReachableSet reachable_set(const LatticeBasis& b, std::size_t m, const SourceSpec& src,
                                  const std::vector<RationalRatioRow>& rows,
                                  std::size_t budget = 10000000, bool allow_sampling = true,
                                  std::uint64_t sample_seed = 1,
                                  std::size_t sample_count = 1000000) {
    const std::size_t n = b.dim();
    const MatrixR& r = b.triangular();
    const RationalRatioRow& row = rows.at(m);
    ReachableSet out;
    out.q = row.q;

    if (row.q == 1) {
        out.values = {0};
        out.provenance = ReachableSet::Provenance::ExactEnumeration;
        return out;
    }
    if (src.kind == SourceSpec::Kind::Gaussian) {
        // Full support: the residues generated by the q_m/q_ml p_ml span all
        // of Z_q (their gcd with q is 1 because q is the lcm of the q_ml).
        if (row.q > 100000000)
            throw BudgetExceeded("reachable_set: q_m too large to materialize the full set");
        long long qv = row.q.convert_to<long long>();
        out.values.resize(static_cast<std::size_t>(qv));
        for (long long s = 0; s < qv; ++s) out.values[static_cast<std::size_t>(s)] = s;
        out.provenance = ReachableSet::Provenance::Full;
        return out;
    }

    const double half = src.a / 2.0;
    std::vector<std::int64_t> u(n, 0);
    std::vector<long long> found;
    std::size_t visited = 0;
    bool exceeded = false;

    // Depth-first over rows l = n-1 down to m+1.
    auto rec = [&](auto&& self, std::size_t l) -> void {
        if (exceeded) return;
        if (l == m) {
            BigInt f = detail::fractional_numerator(row, u);
            found.push_back(f.convert_to<long long>());
            return;
        }
        double c = 0;
        for (std::size_t j = l + 1; j < n; ++j) c += r(l, j) * static_cast<double>(u[j]);
        const double v = r(l, l);
        double t_lo = (-half - c) / v + 0.5;
        double t_hi = (half - c) / v + 0.5;
        std::int64_t lo = static_cast<std::int64_t>(std::floor(t_lo)) - 1;
        std::int64_t hi = static_cast<std::int64_t>(std::floor(t_hi)) + 1;
        for (std::int64_t cand = lo; cand <= hi; ++cand) {
            if (++visited > budget) {
                exceeded = true;
                return;
            }
            // Preimage of cand inside the source interval, half-open to match
            // round-half-up: x in [(cand-1/2)v + c, (cand+1/2)v + c).
            double x_lo = (static_cast<double>(cand) - 0.5) * v + c;
            double x_hi = (static_cast<double>(cand) + 0.5) * v + c;
            if (std::max(x_lo, -half) >= std::min(x_hi, half)) continue;
            u[l] = cand;
            self(self, l - 1);
            u[l] = 0;
        }
    };
    rec(rec, n - 1);

    if (!exceeded) {
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        out.values = std::move(found);
        out.provenance = ReachableSet::Provenance::ExactEnumeration;
        return out;
    }
    if (!allow_sampling)
        throw BudgetExceeded("reachable_set: enumeration budget exceeded and sampling disabled");

    Rng rng(sample_seed);
    std::vector<long long> seen;
    for (std::size_t it = 0; it < sample_count; ++it) {
        Vec x = src.sample(rng, n);
        CvpResult bp = babai_nearest_plane(r, x);
        BigInt f = detail::fractional_numerator(row, bp.u);
        seen.push_back(f.convert_to<long long>());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    out.values = std::move(seen);
    out.provenance = ReachableSet::Provenance::Sampled;
    return out;
}

// One sensor-to-CN message: the rounded coordinate and the side information.
struct DbpMessage {
    std::size_t m = 0;
    std::int64_t u_tilde = 0;
    long long s = 0;  // s_n = 0 by definition; -1 is the "no valid s" sentinel
};

// Encoder at sensor m: u~ = [x/v_mm], and s_m the largest s in S_m with
// [x/v_mm - s/q_m] = [x/v_mm], evaluated by the equivalent closed form
// s_m = max{ s in S_m : s <= floor(frac(x/v_mm + 1/2) q_m) }.  With t =
// x/v_mm + 1/2, [x/v_mm - s/q] = floor(t - s/q) equals floor(t) exactly
// when s/q <= frac(t), which for integer s is s <= floor(frac(t) q).
inline DbpMessage encode(std::size_t m, double x_m, double v_mm, const ReachableSet& set) {
    DbpMessage msg;
    msg.m = m;
    const double t = x_m / v_mm + 0.5;
    const double tf = std::floor(t);
    msg.u_tilde = static_cast<std::int64_t>(tf);
    if (set.q == 1) {
        msg.s = 0;
        return msg;
    }
    const double phi = t - tf;  // fractional position in [0, 1)
    double qd = set.q.convert_to<double>();
    long long cap = static_cast<long long>(std::floor(phi * qd));
    msg.s = set.max_leq(cap);
    return msg;
}

// Decoder at the central node.  f_m is computed with exact integer
// arithmetic; the branch on f_m <= s_m undoes the rounding shift.
inline std::vector<std::int64_t> decode(const std::vector<DbpMessage>& messages,
                                        const std::vector<RationalRatioRow>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::optional<DbpMessage>> by_m(n);
    for (const auto& msg : messages) {
        if (msg.m >= n) throw MissingMessage("decode: message index out of range");
        by_m[msg.m] = msg;
    }
    std::vector<std::int64_t> u(n, 0);
    for (std::size_t mi = n; mi-- > 0;) {
        if (!by_m[mi])
            throw MissingMessage("decode: no message from sensor " + std::to_string(mi));
        const DbpMessage& msg = *by_m[mi];
        const RationalRatioRow& row = rows[mi];
        BigInt num = 0;
        for (const auto& [l, ratio] : row.ratios)
            num += BigInt(u[l]) * ratio.num() * (row.q / ratio.den());
        BigInt fdiv = detail::floor_div(num, row.q);
        BigInt f = num - fdiv * row.q;  // integer in [0, q)
        std::int64_t shift = fdiv.convert_to<std::int64_t>();
        bool carry = f > msg.s;
        u[mi] = msg.u_tilde - shift - (carry ? 1 : 0);
    }
    return u;
}

struct SensorTranscript {
    std::size_t m = 0;
    BigInt q = 1;
    ReachableSet set;
    std::map<std::pair<std::int64_t, long long>, std::size_t> symbol_freqs;  // (u~, s) counts
};

struct SimulationResult {
    std::size_t trials = 0;
    std::size_t mismatches = 0;
    double agreement = 1.0;
    std::vector<SensorTranscript> sensors;
};

// Runs the full protocol: one logical sensor per coordinate encodes its
// observation, messages travel over per-sensor queues and are delivered to
// the central node in a rotating interleaved order (the CN buffers them and
// consumes in the order m = n, ..., 1), and the decoded coefficients are
// compared against the direct nearest-plane computation.
inline SimulationResult simulate(const LatticeBasis& b, const SourceSpec& src,
                                 std::size_t trials, std::uint64_t seed,
                                 const std::vector<ReachableSet>* sets_in = nullptr,
                                 std::int64_t max_den = 1000000) {
    const std::size_t n = b.dim();
    const MatrixR& r = b.triangular();
    auto rows = ratio_rows(b, max_den);

    std::vector<ReachableSet> sets;
    if (sets_in) {
        sets = *sets_in;
    } else {
        for (std::size_t m = 0; m < n; ++m)
            sets.push_back(reachable_set(b, m, src, rows, 10000000, true, seed ^ (m + 1)));
    }

    SimulationResult result;
    result.trials = trials;
    for (std::size_t m = 0; m < n; ++m) {
        SensorTranscript t;
        t.m = m;
        t.q = rows[m].q;
        t.set = sets[m];
        result.sensors.push_back(std::move(t));
    }

    Rng rng(seed);
    std::vector<std::deque<DbpMessage>> queues(n);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Vec x = src.sample(rng, n);
        for (std::size_t m = 0; m < n; ++m)
            queues[m].push_back(encode(m, x[m], r(m, m), sets[m]));

        // Deliver one message per sensor in a rotating order; the CN keys
        // messages by sensor index, so arrival order is immaterial.
        std::vector<DbpMessage> delivered;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t m = (k + trial) % n;
            delivered.push_back(queues[m].front());
            queues[m].pop_front();
        }
        std::vector<std::int64_t> u = decode(delivered, rows);

        CvpResult direct = babai_nearest_plane(r, x);
        if (u != direct.u) ++result.mismatches;
        for (const auto& msg : delivered)
            ++result.sensors[msg.m].symbol_freqs[{msg.u_tilde, msg.s}];
    }
    result.agreement =
        trials == 0 ? 1.0
                    : 1.0 - static_cast<double>(result.mismatches) / static_cast<double>(trials);
    return result;
}

}  // namespace latbab
