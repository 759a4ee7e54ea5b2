#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "latbab/error_analysis.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/rational.hpp"

namespace latbab {

// Inputs shared by the success-probability bounds: Babai-cell sizes (sorted
// descending, as the Exclusion bound's indexing requires), covering radius,
// and the derived quantities delta, m and delta_1.
struct BoundInputs {
    Vec a;  // descending
    double r_cov = 0;
    std::size_t n = 0;

    static BoundInputs from_sizes(Vec sizes, double r_cov) {
        BoundInputs in;
        in.a = std::move(sizes);
        std::sort(in.a.begin(), in.a.end(), std::greater<double>());
        in.r_cov = r_cov;
        in.n = in.a.size();
        return in;
    }

    double sum_a2() const {
        double s = 0;
        for (double x : a) s += x * x;
        return s;
    }
    double sum_a4() const {
        double s = 0;
        for (double x : a) s += x * x * x * x;
        return s;
    }
    // delta = (1/n) (sum a_i^2 / 12 - r_cov^2)
    double delta() const {
        return (sum_a2() / 12.0 - r_cov * r_cov) / static_cast<double>(n);
    }
    // m = #{ i : a_i > 2 r_cov } under the descending order
    std::size_t m_count() const {
        std::size_t m = 0;
        while (m < n && a[m] > 2.0 * r_cov) ++m;
        return m;
    }
    // delta_1 = sum_{i>m} a_i^2 / 12 - r_cov^2 (1 - m/3)
    double delta1() const {
        std::size_t m = m_count();
        double tail = 0;
        for (std::size_t i = m; i < n; ++i) tail += a[i] * a[i];
        return tail / 12.0 - r_cov * r_cov * (1.0 - static_cast<double>(m) / 3.0);
    }
};

// P_c <= (1/(180 n^2)) sum a_i^4 / delta^2, valid when sum a_i^2 / 12 >
// r_cov^2 (the variance condition).
inline ErrorProbabilityReport chebyshev_bound(const BoundInputs& in) {
    if (!(in.sum_a2() / 12.0 > in.r_cov * in.r_cov))
        throw ConditionFailed("chebyshev_bound: condition sum a_i^2/12 > r_cov^2 fails");
    double d = in.delta();
    double bound = in.sum_a4() / (180.0 * static_cast<double>(in.n) * static_cast<double>(in.n) * d * d);
    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::ChebyshevBound;
    rep.bound_on_pc = true;
    rep.p_c = bound;
    rep.p_e = 1.0 - bound;
    return rep;
}

// P_c <= (2 r_cov)^m / prod_{i<=m} a_i; unity when m = 0.
inline ErrorProbabilityReport exclusion_bound(const BoundInputs& in) {
    std::size_t m = in.m_count();
    double bound = 1.0;
    for (std::size_t i = 0; i < m; ++i) bound *= 2.0 * in.r_cov / in.a[i];
    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::ExclusionBound;
    rep.bound_on_pc = true;
    rep.p_c = bound;
    rep.p_e = 1.0 - bound;
    return rep;
}

// Exclusion cuts followed by the Chebyshev step on the cut box:
// P_c <= [(2 r_cov)^m / prod_{i<=m} a_i] *
//        [(m (2 r_cov)^4 + sum_{i>m} a_i^4) / (180 delta_1^2)],
// requiring delta_1 > 0.  With m = 0 this is exactly the Chebyshev bound.
inline ErrorProbabilityReport combined_bound(const BoundInputs& in) {
    double d1 = in.delta1();
    if (!(d1 > 0))
        throw ConditionFailed("combined_bound: condition delta_1 > 0 fails");
    std::size_t m = in.m_count();
    double excl = 1.0;
    for (std::size_t i = 0; i < m; ++i) excl *= 2.0 * in.r_cov / in.a[i];
    double two_r = 2.0 * in.r_cov;
    double tail4 = 0;
    for (std::size_t i = m; i < in.n; ++i) tail4 += std::pow(in.a[i], 4);
    double cheb = (static_cast<double>(m) * std::pow(two_r, 4) + tail4) / (180.0 * d1 * d1);
    ErrorProbabilityReport rep;
    rep.method = ErrorProbabilityReport::Method::CombinedBound;
    rep.bound_on_pc = true;
    rep.p_c = excl * cheb;
    rep.p_e = 1.0 - rep.p_c;
    return rep;
}

// A_n family: sizes a_k = sqrt((k+1)/k) never satisfy the Chebyshev
// condition, since sum a_i^2 / 12 = (n + H_n)/12 stays below the squared
// covering radius for every n.  Both sides are computed exactly.
struct AnConditionReport {
    std::size_t n = 0;
    double lhs = 0;    // sum a_i^2 / 12
    double rhs = 0;    // r_cov^2
    bool holds = false;
};

inline AnConditionReport an_condition_check(std::size_t n) {
    if (n < 1) throw Error("an_condition_check: n >= 1");
    Rational lhs(0);
    for (std::size_t i = 1; i <= n; ++i)
        lhs += Rational(1) + Rational(BigInt(1), BigInt(static_cast<long long>(i)));
    lhs = lhs / Rational(12);
    // r_cov^2 = floor((n+1)/2) * ceil((n+1)/2) / (n+1), exactly.
    long long np1 = static_cast<long long>(n) + 1;
    Rational rhs(BigInt((np1 / 2) * (np1 - np1 / 2)), BigInt(np1));
    AnConditionReport rep;
    rep.n = n;
    rep.lhs = lhs.to_double();
    rep.rhs = rhs.to_double();
    rep.holds = lhs > rhs;
    return rep;
}

// Regularized lower incomplete gamma P(a, x) to ~1e-14 relative accuracy:
// power series for x < a + 1, Lentz continued fraction otherwise.
inline double regularized_gamma_p(double a, double x) {
    if (!(a > 0) || x < 0) throw Error("regularized_gamma_p: bad arguments");
    if (x == 0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term;
        for (int k = 1; k < 100000; ++k) {
            term *= x / (a + static_cast<double>(k));
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

inline double chi2_cdf(double x, std::size_t k) {
    return regularized_gamma_p(static_cast<double>(k) / 2.0, x / 2.0);
}

// Variance thresholds under which the Babai point recovers the transmitted
// lattice point with probability -> 1 as n grows: the per-lattice form
// sigma^2 < r_pack^2 / n and the Minkowski-relaxed form
// sigma^2 < vol^{2/n} / 4, plus chi-squared diagnostics at requested sigmas.
// Requires r_pack <= a_i / 2 for every Babai-cell side.
struct GaussianThresholdReport {
    double sigma2_sharp = 0;    // r_pack^2 / n
    double sigma2_relaxed = 0;  // vol^{2/n} / 4
    double r_pack = 0;
    Vec a;
    struct Diagnostic {
        double sigma;
        double z;    // r_pack^2 / (sigma^2 n)
        double cdf;  // chi^2_CDF(r_pack^2 / sigma^2; n)
    };
    std::vector<Diagnostic> diagnostics;
};

inline GaussianThresholdReport gaussian_threshold(const LatticeBasis& b,
                                                  const Vec& sigmas = {}) {
    const std::size_t n = b.dim();
    GaussianThresholdReport rep;
    rep.r_pack = b.min_distance() / 2.0;
    rep.a = b.babai_sizes();
    std::string offending;
    for (std::size_t i = 0; i < n; ++i)
        if (rep.r_pack > rep.a[i] / 2.0 + 1e-12)
            offending += (offending.empty() ? "" : ", ") + std::to_string(i + 1);
    if (!offending.empty())
        throw HypothesisFailed("gaussian_threshold: r_pack > a_i/2 for i in {" + offending + "}");
    rep.sigma2_sharp = rep.r_pack * rep.r_pack / static_cast<double>(n);
    rep.sigma2_relaxed = std::pow(b.volume(), 2.0 / static_cast<double>(n)) / 4.0;
    for (double s : sigmas) {
        GaussianThresholdReport::Diagnostic d;
        d.sigma = s;
        d.z = rep.r_pack * rep.r_pack / (s * s * static_cast<double>(n));
        d.cdf = chi2_cdf(rep.r_pack * rep.r_pack / (s * s), n);
        rep.diagnostics.push_back(d);
    }
    return rep;
}

}  // namespace latbab
