#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "latbab/catalog.hpp"
#include "latbab/dbp.hpp"
#include "latbab/rng.hpp"

using namespace latbab;

namespace {

LatticeBasis example3_lattice() {
    ExactColumns cols = {
        {ScalarExpr(Rational(1)), ScalarExpr(Rational(0))},
        {ScalarExpr(Rational(BigInt(311), BigInt(1000))),
         ScalarExpr(Rational(BigInt(101), BigInt(100)))},
    };
    return LatticeBasis(cols);
}

LatticeBasis fig3_lattice(long long m) {
    ExactColumns cols = {
        {ScalarExpr(Rational(1)), ScalarExpr(Rational(0))},
        {ScalarExpr(Rational(BigInt(1), BigInt(m))),
         ScalarExpr(Rational(BigInt(1), BigInt(m)), Rational(BigInt(m * m - 1)))},
    };
    return LatticeBasis(cols);
}

ReachableSet full_set(long long q) {
    ReachableSet s;
    s.q = q;
    for (long long v = 0; v < q; ++v) s.values.push_back(v);
    s.provenance = ReachableSet::Provenance::Full;
    return s;
}

// Random upper-triangular basis with rational ratios by construction.
LatticeBasis random_rational_lattice(Rng& rng, std::size_t n) {
    ExactColumns cols(n, std::vector<ScalarExpr>(n, ScalarExpr(Rational(0))));
    for (std::size_t j = 0; j < n; ++j) {
        cols[j][j] = ScalarExpr(Rational(BigInt(rng.uniform_int(2, 8)), BigInt(4)));
        for (std::size_t i = 0; i < j; ++i)
            cols[j][i] = ScalarExpr(Rational(BigInt(rng.uniform_int(-12, 12)),
                                             BigInt(rng.uniform_int(1, 12))));
    }
    return LatticeBasis(cols);
}

}  // namespace

TEST_CASE("ratio rows of the worked examples") {
    auto bcc = ratio_rows(*catalog_lookup("BCC").basis);
    // Row 2 (index 1): v_23/v_22 = -1/2 so q = 2; row 1: both ratios -1/3, q = 3.
    CHECK(bcc[1].q == 2);
    CHECK(bcc[0].q == 3);
    CHECK(bcc[2].q == 1);
    REQUIRE(bcc[0].ratios.size() == 2);
    CHECK(bcc[0].ratios[0].second == Rational(BigInt(-1), BigInt(3)));

    auto ex3 = ratio_rows(example3_lattice());
    CHECK(ex3[0].q == 1000);
    CHECK(ex3[0].ratios[0].second == Rational(BigInt(311), BigInt(1000)));
}

TEST_CASE("ratio rows of a diagonal lattice are trivial") {
    MatrixR diag(3);
    diag(0, 0) = 1.0;
    diag(1, 1) = 0.7;
    diag(2, 2) = 1.3;
    auto rows = ratio_rows(LatticeBasis(diag));
    for (const auto& r : rows) {
        CHECK(r.q == 1);
        CHECK(r.ratios.empty());
    }
}

TEST_CASE("ratio recovery falls back to continued fractions for double input") {
    MatrixR v(2, {1.0, 0.311, 0.0, 1.01});
    auto rows = ratio_rows(LatticeBasis(v));
    CHECK(rows[0].q == 1000);
}

TEST_CASE("reachable set of the m=991 lattice is the seven-element restricted set") {
    LatticeBasis b = fig3_lattice(991);
    auto rows = ratio_rows(b);
    REQUIRE(rows[0].q == 991);
    ReachableSet s = reachable_set(b, 0, SourceSpec::uniform(5.0), rows);
    CHECK(s.provenance == ReachableSet::Provenance::ExactEnumeration);
    CHECK(s.values == std::vector<long long>{0, 1, 2, 3, 988, 989, 990});
}

TEST_CASE("reachable sets of BCC under a wide uniform source") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    auto rows = ratio_rows(b);
    ReachableSet s2 = reachable_set(b, 1, SourceSpec::uniform(20.0), rows);
    CHECK(s2.values == std::vector<long long>{0, 1});
    ReachableSet s1 = reachable_set(b, 0, SourceSpec::uniform(20.0), rows);
    CHECK(s1.values == std::vector<long long>{0, 1, 2});
}

TEST_CASE("reachable sets of a diagonal lattice are {0}") {
    MatrixR diag(2);
    diag(0, 0) = 0.8;
    diag(1, 1) = 1.2;
    LatticeBasis b(diag);
    auto rows = ratio_rows(b);
    for (std::size_t m = 0; m < 2; ++m) {
        ReachableSet s = reachable_set(b, m, SourceSpec::uniform(5.0), rows);
        CHECK(s.values == std::vector<long long>{0});
    }
}

TEST_CASE("gaussian sources give the full set") {
    LatticeBasis b = example3_lattice();
    auto rows = ratio_rows(b);
    ReachableSet s = reachable_set(b, 0, SourceSpec::gaussian(0.5), rows);
    CHECK(s.provenance == ReachableSet::Provenance::Full);
    CHECK(s.values.size() == 1000);
}

TEST_CASE("encoder emits s_1 = 500 at x=(1,1) with the full range") {
    LatticeBasis b = example3_lattice();
    DbpMessage msg = encode(0, 1.0, b.triangular()(0, 0), full_set(1000));
    CHECK(msg.u_tilde == 1);
    CHECK(msg.s == 500);
}

TEST_CASE("encoder on a diagonal lattice always sends s = 0") {
    ReachableSet trivial;
    trivial.q = 1;
    trivial.values = {0};
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        DbpMessage msg = encode(0, rng.uniform(-10, 10), 0.9, trivial);
        CHECK(msg.s == 0);
    }
}

TEST_CASE("encoder on BCC sensor 2 at x2 = 0.9 matches a direct largest-valid-s scan") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    double v22 = b.triangular()(1, 1);
    ReachableSet s01 = full_set(2);
    DbpMessage msg = encode(1, 0.9, v22, s01);
    // Direct scan: the largest s in {0,1} with [x/v - s/2] = [x/v].
    double y = 0.9 / v22;
    auto nearest = [](double t) { return std::floor(t + 0.5); };
    long long want = -1;
    for (long long s = 0; s <= 1; ++s)
        if (nearest(y - static_cast<double>(s) / 2.0) == nearest(y)) want = s;
    CHECK(msg.u_tilde == 1);
    CHECK(msg.s == want);
    CHECK(msg.s == 0);
}

TEST_CASE("decoder reproduces Example 3 at x = (1,1)") {
    LatticeBasis b = example3_lattice();
    auto rows = ratio_rows(b);
    const MatrixR& r = b.triangular();
    std::vector<DbpMessage> msgs = {encode(0, 1.0, r(0, 0), full_set(1000)),
                                    encode(1, 1.0, r(1, 1), full_set(1))};
    std::vector<std::int64_t> u = decode(msgs, rows);
    CHECK(u == std::vector<std::int64_t>{1, 1});
    // f_1 = {1 * 311/1000} * 1000 = 311 <= s_1 = 500, so no carry.
    CHECK(babai_nearest_plane(r, {1.0, 1.0}).u == u);
}

TEST_CASE("decode equals the nearest-plane coefficients on seeded BCC inputs") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    auto rows = ratio_rows(b);
    const MatrixR& r = b.triangular();
    SourceSpec src = SourceSpec::uniform(5.0);
    std::vector<ReachableSet> sets;
    for (std::size_t m = 0; m < 3; ++m)
        sets.push_back(reachable_set(b, m, src, rows));
    Rng rng(1234);
    for (int t = 0; t < 100000; ++t) {
        Vec x = src.sample(rng, 3);
        std::vector<DbpMessage> msgs;
        for (std::size_t m = 0; m < 3; ++m) msgs.push_back(encode(m, x[m], r(m, m), sets[m]));
        REQUIRE(decode(msgs, rows) == babai_nearest_plane(r, x).u);
    }
}

TEST_CASE("f_m is an exact integer in [0, q_m) and s_m is monotone in phi") {
    LatticeBasis b = fig3_lattice(7);
    auto rows = ratio_rows(b);
    REQUIRE(rows[0].q == 7);
    Rng rng(88);
    for (int t = 0; t < 2000; ++t) {
        std::vector<std::int64_t> u = {0, rng.uniform_int(-40, 40)};
        BigInt f = detail::fractional_numerator(rows[0], u);
        REQUIRE(f >= 0);
        REQUIRE(f < rows[0].q);
    }
    // Monotonicity of s in the fractional position, at fixed u~.
    ReachableSet s = reachable_set(b, 0, SourceSpec::uniform(5.0), rows);
    long long prev = -2;
    for (double x = -0.5; x < 0.499; x += 1e-3) {
        DbpMessage msg = encode(0, x, 1.0, s);  // t = x + 1/2 in [0,1), so u~ = 0
        REQUIRE(msg.u_tilde == 0);
        CHECK(msg.s >= prev);
        prev = msg.s;
    }
}

TEST_CASE("reachable-set sampling only ever sees enumerated values") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    auto rows = ratio_rows(b);
    ReachableSet exact = reachable_set(b, 0, SourceSpec::uniform(5.0), rows);
    CHECK(exact.provenance == ReachableSet::Provenance::ExactEnumeration);
    ReachableSet sampled = reachable_set(b, 0, SourceSpec::uniform(5.0), rows, /*budget=*/1,
                                         /*allow_sampling=*/true, /*sample_seed=*/17, 200000);
    CHECK(sampled.provenance == ReachableSet::Provenance::Sampled);
    std::set<long long> ex(exact.values.begin(), exact.values.end());
    for (long long v : sampled.values) CHECK(ex.count(v) == 1);
}

TEST_CASE("budget exhaustion without sampling raises") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    auto rows = ratio_rows(b);
    CHECK_THROWS_AS(
        reachable_set(b, 0, SourceSpec::uniform(5.0), rows, 1, /*allow_sampling=*/false),
        BudgetExceeded);
}

TEST_CASE("simulate: agreement 1.0 on the worked lattices") {
    for (const char* name : {"hexagonal", "BCC"}) {
        LatticeBasis b = *catalog_lookup(name).basis;
        SimulationResult res = simulate(b, SourceSpec::uniform(5.0), 20000, 99);
        INFO(name);
        CHECK(res.mismatches == 0);
        CHECK(res.agreement == 1.0);
    }
    SimulationResult ex3 = simulate(example3_lattice(), SourceSpec::uniform(5.0), 20000, 7);
    CHECK(ex3.mismatches == 0);
    // Observed s values stay inside the configured reachable set.
    for (const auto& sensor : ex3.sensors) {
        std::set<long long> allowed(sensor.set.values.begin(), sensor.set.values.end());
        allowed.insert(-1);
        for (const auto& [key, cnt] : sensor.symbol_freqs) CHECK(allowed.count(key.second) == 1);
    }

    MatrixR diag(3);
    diag(0, 0) = 0.9;
    diag(1, 1) = 1.1;
    diag(2, 2) = 1.0;
    SimulationResult dg = simulate(LatticeBasis(diag), SourceSpec::uniform(5.0), 5000, 3);
    CHECK(dg.mismatches == 0);
    for (const auto& sensor : dg.sensors)
        for (const auto& [key, cnt] : sensor.symbol_freqs) CHECK(key.second == 0);
}

TEST_CASE("decode with a missing message raises") {
    LatticeBasis b = *catalog_lookup("BCC").basis;
    auto rows = ratio_rows(b);
    std::vector<DbpMessage> partial = {encode(2, 0.3, b.triangular()(2, 2), full_set(1))};
    CHECK_THROWS_AS(decode(partial, rows), MissingMessage);
}

TEST_CASE("decode equals nearest plane over random rational lattices (n <= 5)") {
    Rng rng(31337);
    for (int lat = 0; lat < 10; ++lat) {
        std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
        LatticeBasis b = random_rational_lattice(rng, n);
        SimulationResult res = simulate(b, SourceSpec::uniform(5.0), 10000,
                                        1000 + static_cast<std::uint64_t>(lat));
        INFO("lattice " << lat << " n=" << n);
        REQUIRE(res.mismatches == 0);
    }
}

TEST_CASE("irrational row ratios are reported with the offending entry") {
    // v_12/v_11 = sqrt(2): with a denominator cap of 100 the best rational
    // (99/70) misses by ~7e-5, far outside the 1e-9 tolerance.
    MatrixR v(2, {1.0, std::sqrt(2.0), 0.0, 1.0});
    try {
        ratio_rows(LatticeBasis(v), /*max_den=*/100, /*tol=*/1e-9);
        FAIL("expected NoRationalWithinTolerance");
    } catch (const NoRationalWithinTolerance& e) {
        std::string msg = e.what();
        CHECK(msg.find("v[0][1]") != std::string::npos);
    }
    // FCC's triangular form, by contrast, has rational row ratios (-1/2 and
    // -2/3) even though its entries are irrational.
    auto rows = ratio_rows(*catalog_lookup("FCC").basis, 100, 1e-9);
    CHECK(rows[0].q == 2);
    CHECK(rows[1].q == 3);
}

TEST_CASE("exact set enumeration agrees with a brute-force box walk") {
    // Independent oracle: enumerate every downstream coefficient combination
    // over a generous fixed box and keep those whose preimage intersects the
    // source box, in a completely different traversal order.
    for (const char* name : {"BCC", "hexagonal"}) {
        LatticeBasis b = *catalog_lookup(name).basis;
        auto rows = ratio_rows(b);
        const MatrixR& r = b.triangular();
        const std::size_t n = b.dim();
        const double half = 2.5;
        for (std::size_t m = 0; m + 1 < n; ++m) {
            std::set<long long> oracle;
            std::vector<std::int64_t> u(n, 0);
            auto walk = [&](auto&& self, std::size_t depth) -> void {
                if (depth == m) {
                    // Feasibility: coordinates l > m must each have a
                    // positive-measure preimage given the downstream choices.
                    for (std::size_t l = n; l-- > m + 1;) {
                        double c = 0;
                        for (std::size_t j = l + 1; j < n; ++j)
                            c += r(l, j) * static_cast<double>(u[j]);
                        double x_lo = (static_cast<double>(u[l]) - 0.5) * r(l, l) + c;
                        double x_hi = (static_cast<double>(u[l]) + 0.5) * r(l, l) + c;
                        if (std::max(x_lo, -half) >= std::min(x_hi, half)) return;
                    }
                    oracle.insert(detail::fractional_numerator(rows[m], u)
                                      .convert_to<long long>());
                    return;
                }
                for (std::int64_t cand = -8; cand <= 8; ++cand) {
                    u[depth] = cand;
                    self(self, depth - 1);
                }
                u[depth] = 0;
            };
            walk(walk, n - 1);
            ReachableSet s = reachable_set(b, m, SourceSpec::uniform(5.0), rows);
            INFO(name << " row " << m);
            REQUIRE(std::set<long long>(s.values.begin(), s.values.end()) == oracle);
        }
    }
}
