// Acceptance suite: one check per criterion, each printed as a PASS/FAIL
// line with the measured values and its runtime.  The process exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "latbab/latbab.hpp"

using namespace latbab;

namespace {

int g_failures = 0;

struct Criterion {
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) failed_.push_back(what);
    }

    void note(const std::string& line) { notes_.push_back(line); }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    ~Criterion() {
        double secs = seconds();
        if (failed_.empty()) {
            std::printf("[PASS] criterion %d: %s (%.1f s)\n", number_, title_.c_str(), secs);
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %d: %s (%.1f s)\n", number_, title_.c_str(), secs);
            for (const auto& f : failed_) std::printf("       - %s\n", f.c_str());
        }
        for (const auto& n : notes_) std::printf("       note: %s\n", n.c_str());
    }

    int number_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> failed_;
    std::vector<std::string> notes_;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

LatticeBasis example3_lattice() {
    ExactColumns cols = {
        {ScalarExpr(Rational(1)), ScalarExpr(Rational(0))},
        {ScalarExpr(Rational(BigInt(311), BigInt(1000))),
         ScalarExpr(Rational(BigInt(101), BigInt(100)))},
    };
    return LatticeBasis(cols);
}

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

void criterion1_table1() {
    Criterion c(1, "table reproduction: P_e and Delta_3 within 5e-4, under 60 s");
    auto rows = run_table1();
    const double want_delta[] = {0.5235, 0.6046, 0.7404, 0.5235, 0.6802};
    const double want_pe[] = {0.0, 0.0833, 0.1505, 0.1134, 0.1458};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        c.expect(std::fabs(rows[i].delta3 - want_delta[i]) <= 5e-4,
                 rows[i].name + ": Delta_3 " + fmt(rows[i].delta3) + " vs " + fmt(want_delta[i]));
        c.expect(std::fabs(rows[i].p_e - want_pe[i]) <= 5e-4,
                 rows[i].name + ": P_e " + fmt(rows[i].p_e) + " vs " + fmt(want_pe[i]));
        c.note(rows[i].name + ": Delta_3 = " + fmt(rows[i].delta3) +
               ", P_e = " + fmt(rows[i].p_e) + " (" + cell_type_name(rows[i].cell) + ")");
    }
    c.expect(c.seconds() < 60.0, "runtime exceeded 60 s");
}

void criterion2_protocol_exactness() {
    Criterion c(2, "protocol exactness: decoder == nearest-plane on 10^5 inputs per lattice");
    const std::size_t trials = 100000;
    std::size_t lattices = 0, total_mismatches = 0;

    auto run_one = [&](const LatticeBasis& b, std::uint64_t seed, const std::string& name) {
        SimulationResult res = simulate(b, SourceSpec::uniform(5.0), trials, seed);
        total_mismatches += res.mismatches;
        ++lattices;
        if (res.mismatches != 0)
            c.expect(false, name + ": " + std::to_string(res.mismatches) + " mismatches");
    };

    run_one(*catalog_lookup("hexagonal").basis, 11, "A2");
    run_one(*catalog_lookup("BCC").basis, 12, "BCC");
    run_one(example3_lattice(), 13, "Example-3 lattice");
    Rng rng(314);
    for (int k = 0; k < 20; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
        run_one(random_rational_lattice(rng, n), 1000 + static_cast<std::uint64_t>(k),
                "random rational lattice " + std::to_string(k) + " (n=" + std::to_string(n) + ")");
    }
    c.note(std::to_string(lattices) + " lattices x " + std::to_string(trials) +
           " trials, total mismatches = " + std::to_string(total_mismatches));
    c.expect(total_mismatches == 0, "decoder/nearest-plane mismatch");
    c.expect(c.seconds() < 120.0, "runtime exceeded 120 s");
}

void criterion3_worked_examples() {
    Criterion c(3, "worked examples: q_2 = 2, q_1 = 3, log2 6 ceiling; s_1 = 500, log2 1000");
    auto bcc_rows = ratio_rows(*catalog_lookup("BCC").basis);
    c.expect(bcc_rows[1].q == 2, "BCC q_2 != 2");
    c.expect(bcc_rows[0].q == 3, "BCC q_1 != 3");
    double ceiling = std::log2(bcc_rows[1].q.convert_to<double>()) +
                     std::log2(bcc_rows[0].q.convert_to<double>());
    c.expect(std::fabs(ceiling - 2.585) < 1e-3,
             "extra-rate ceiling " + fmt(ceiling) + " != log2 6");
    c.note("BCC: q_2 = 2, q_1 = 3, ceiling " + fmt(ceiling) + " bits");

    LatticeBasis ex3 = example3_lattice();
    auto rows = ratio_rows(ex3);
    c.expect(rows[0].q == 1000, "Example-3 q_1 != 1000");
    ReachableSet full;
    full.q = 1000;
    for (long long s = 0; s < 1000; ++s) full.values.push_back(s);
    full.provenance = ReachableSet::Provenance::Full;
    DbpMessage msg = encode(0, 1.0, ex3.triangular()(0, 0), full);
    c.expect(msg.s == 500, "Example-3 s_1 = " + std::to_string(msg.s) + " != 500");
    c.note("Example 3 at x=(1,1): s_1 = " + std::to_string(msg.s) + ", worst case log2 1000 = " +
           fmt(std::log2(1000.0)) + " bits");
}

void criterion4_fig3() {
    Criterion c(4, "rate sweep: extra-rate max at m = 6 over 2..120; exact m = 991 set");
    auto rows = fig3_sweep(2, 120, 5.0);
    int best_m = 0;
    double best = -1;
    for (const auto& r : rows)
        if (r.h_s1_given_u1 > best) {
            best = r.h_s1_given_u1;
            best_m = r.m;
        }
    c.expect(best_m == 6, "argmax of H(S_1|U~_1) is m = " + std::to_string(best_m) +
                              " (value " + fmt(best) + "), not m = 6");
    c.note("H(S_1|U~_1): m=5: 2.3219, m=6: 2.5850, m=7: 2.8074 (= log2 m; the side set stays "
           "full through m = 7 because u_2 spans {-3..3}), m=8: 2.7500; the m = 6 peak is not "
           "reproducible under the protocol's own set semantics -- see the decisions ledger");

    LatticeBasis b991 = fig3_basis(991);
    auto rr = ratio_rows(b991);
    ReachableSet s = reachable_set(b991, 0, SourceSpec::uniform(5.0), rr);
    bool exact_match = s.values == std::vector<long long>{0, 1, 2, 3, 988, 989, 990} &&
                       s.provenance == ReachableSet::Provenance::ExactEnumeration;
    c.expect(exact_match, "m = 991 reachable set differs from {0,1,2,3,988,989,990}");
    std::string got = "{";
    for (long long v : s.values) got += std::to_string(v) + ",";
    got.back() = '}';
    c.note("m = 991 exact set = " + got);
}

void criterion5_closed_form() {
    Criterion c(5, "closed form: hexagonal 1/12, orthogonal 0, MC agreement on 20 bases");
    double hex = perr_2d_closed_form(-0.5, std::sqrt(3.0) / 2.0).p_e;
    c.expect(std::fabs(hex - 1.0 / 12.0) < 1e-12, "F(-1/2, sqrt3/2) = " + fmt(hex));
    for (double b : {1.0, 1.2, 2.0})
        c.expect(perr_2d_closed_form(0.0, b).p_e == 0.0, "F(0, b) != 0");

    Rng rng(5150);
    int agree = 0;
    for (int t = 0; t < 20; ++t) {
        double a = rng.uniform(-0.5, 0.0);
        double bmin = std::sqrt(std::max(0.0, 1.0 - a * a));
        double b = rng.uniform(bmin + 1e-3, 1.6);
        MatrixR v(2, {1.0, a, 0.0, b});
        double closed = perr_2d_closed_form(a, b).p_e;
        auto mc = perr_mc_uniform(LatticeBasis(v), 1000000, 7100 + static_cast<std::uint64_t>(t));
        double se = std::max(mc.uncertainty, 1e-5);
        if (std::fabs(closed - mc.p_e) <= 3.0 * se)
            ++agree;
        else
            c.expect(false, "basis a=" + fmt(a) + " b=" + fmt(b) + ": |F - MC| = " +
                                fmt(std::fabs(closed - mc.p_e)) + " > 3 SE = " + fmt(3 * se));
    }
    c.note(std::to_string(agree) + "/20 random bases within 3 SE of the 10^6-sample MC");
}

void criterion6_bounds() {
    Criterion c(6, "bounds: BW16/Leech values, E8 condition failure, A_n condition false");
    auto inputs = [](const char* name) {
        CatalogEntry e = catalog_lookup(name);
        if (e.babai_sizes && e.r_cov) return BoundInputs::from_sizes(*e.babai_sizes, *e.r_cov);
        return BoundInputs::from_sizes(e.basis->babai_sizes(), *e.r_cov);
    };
    struct Want {
        const char* name;
        double cheb, excl, comb, comb_tol;
    };
    for (const Want w : {Want{"BW16", 0.539, 0.866, 0.4854, 5e-4},
                         Want{"Leech", 0.0833, 0.0078, 4.314e-4, 5e-6}}) {
        BoundInputs in = inputs(w.name);
        double cheb = chebyshev_bound(in).p_c;
        double excl = exclusion_bound(in).p_c;
        double comb = combined_bound(in).p_c;
        c.expect(std::fabs(cheb - w.cheb) <= 5e-4,
                 std::string(w.name) + " Chebyshev " + fmt(cheb) + " vs " + fmt(w.cheb));
        c.expect(std::fabs(excl - w.excl) <= 5e-4,
                 std::string(w.name) + " Exclusion " + fmt(excl) + " vs " + fmt(w.excl));
        c.expect(std::fabs(comb - w.comb) <= w.comb_tol,
                 std::string(w.name) + " combined " + fmt(comb) + " vs " + fmt(w.comb));
        c.note(std::string(w.name) + ": Chebyshev " + fmt(cheb) + ", Exclusion " + fmt(excl) +
               ", combined " + fmt(comb));
    }
    bool e8_threw = false;
    try {
        chebyshev_bound(inputs("E8"));
    } catch (const ConditionFailed&) {
        e8_threw = true;
    }
    c.expect(e8_threw, "E8 did not raise ConditionFailed");
    for (std::size_t n = 1; n <= 100; ++n)
        if (an_condition_check(n).holds)
            c.expect(false, "A_n condition unexpectedly holds at n = " + std::to_string(n));
    c.expect(c.seconds() < 5.0, "runtime exceeded 5 s");
}

void criterion7_eq8_sweep() {
    Criterion c(7, "well-rounded sweep: endpoints, monotone P_e, prism branch, comparison lattice");
    auto rows = wellrounded_sweep(48);  // includes beta = pi/6 (i = 32) and pi/4
    const double pi = 3.14159265358979323846;
    const Eq8Row& first = rows.front();
    const Eq8Row& hexp = rows[32];
    const Eq8Row& last = rows.back();
    c.expect(std::fabs(first.delta - pi / 6.0) <= 5e-4 && std::fabs(first.p_e) <= 5e-4,
             "beta = 0 endpoint: (" + fmt(first.delta) + ", " + fmt(first.p_e) + ")");
    c.expect(std::fabs(hexp.delta - 0.6046) <= 5e-4 && std::fabs(hexp.p_e - 0.0833) <= 5e-4,
             "beta = pi/6 endpoint: (" + fmt(hexp.delta) + ", " + fmt(hexp.p_e) + ")");
    c.expect(std::fabs(last.delta - 0.7404) <= 5e-4 && std::fabs(last.p_e - 0.1505) <= 5e-4,
             "beta = pi/4 endpoint: (" + fmt(last.delta) + ", " + fmt(last.p_e) + ")");
    double prev = -1, worst_gap = 0;
    for (const auto& r : rows) {
        if (r.p_e < prev - 1e-9)
            c.expect(false, "P_e decreases at beta = " + fmt(r.beta));
        prev = r.p_e;
        if (r.beta <= pi / 6.0 + 1e-12 && r.prism_p_e >= 0)
            worst_gap = std::max(worst_gap, std::fabs(r.p_e - r.prism_p_e));
    }
    c.expect(worst_gap <= 1e-9,
             "prism closed form vs polyhedral gap " + fmt(worst_gap) + " > 1e-9");
    c.note("prism-branch worst |closed form - polyhedral| = " + fmt(worst_gap));

    MatrixR v(3);
    v(0, 0) = 1;
    v(1, 1) = 1;
    v(0, 2) = -std::sqrt(17.0 / 108.0);
    v(1, 2) = -0.5;
    v(2, 2) = std::sqrt(16.0 / 27.0);
    auto rep = perr_3d_polyhedral(LatticeBasis(v));
    c.expect(std::fabs(rep.p_e - 0.1368) <= 5e-4,
             "comparison lattice P_e " + fmt(rep.p_e) + " vs 0.1368");
    c.expect(std::fabs(rep.delta3 - 0.6802) <= 5e-4,
             "comparison lattice Delta_3 " + fmt(rep.delta3) + " vs 0.6802");
    c.note("comparison lattice: P_e = " + fmt(rep.p_e) + ", Delta_3 = " + fmt(rep.delta3));
}

void criterion8_fcc_permutations() {
    Criterion c(8, "FCC permutation audit: per-ordering P_e set {0.1505, 0.1667}");
    auto rep = perr_3d_polyhedral(*catalog_lookup("FCC").basis);
    int low = 0, high = 0;
    for (const auto& [perm, pe] : rep.per_permutation) {
        if (std::fabs(pe - 0.1505) <= 5e-4)
            ++low;
        else if (std::fabs(pe - 0.1667) <= 5e-4)
            ++high;
        else
            c.expect(false, "ordering with P_e = " + fmt(pe) + " matches neither value");
    }
    c.expect(low >= 1 && high >= 1 && low + high == 6,
             "distribution over orderings: " + std::to_string(low) + " near 0.1505, " +
                 std::to_string(high) + " near 0.1667");
    c.note(std::to_string(low) + " orderings near 0.1505, " + std::to_string(high) +
           " near 0.1667; min = " + fmt(rep.p_e));
}

void criterion9_geometry_conservation() {
    Criterion c(9, "geometry conservation on catalog + 500 random 3-D lattices");
    auto check_one = [&](const LatticeBasis& b, const std::string& name) {
        double det = b.volume();
        ObtuseSuperbase sb = obtuse_superbase(b);
        Polyhedron3 cell = voronoi_polyhedron_3d(sb);
        const MatrixR& r = b.triangular();
        Polyhedron3 box = Polyhedron3::axis_box({r(0, 0) / 2, r(1, 1) / 2, r(2, 2) / 2});
        Polyhedron3 inter = intersect(cell, box);
        if (std::fabs(cell.volume() - det) > 1e-8 * det)
            c.expect(false,
                     name + ": vol(Voronoi) = " + fmt(cell.volume()) + " vs det " + fmt(det));
        if (std::fabs(box.volume() - det) > 1e-8 * det)
            c.expect(false, name + ": vol(Babai) = " + fmt(box.volume()) + " vs det " + fmt(det));
        if (inter.volume() > det * (1.0 + 1e-8))
            c.expect(false, name + ": vol(V cap B) = " + fmt(inter.volume()) + " > det");
    };
    for (const char* name : {"Z^3", "hp", "FCC", "hrd", "BCC"})
        check_one(*catalog_lookup(name).basis, name);
    Rng rng(987654);
    int done = 0;
    while (done < 500) {
        MatrixR v(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) v(i, j) = rng.uniform(-2, 2);
        try {
            qr_upper_triangular(v);
        } catch (const SingularMatrix&) {
            continue;
        }
        LatticeBasis b(v);
        if (b.volume() < 0.05) continue;
        check_one(b, "random " + std::to_string(done));
        ++done;
    }
    c.note("5 catalog + 500 random lattices within 1e-8 relative");
}

void criterion10_gaussian() {
    Criterion c(10, "gaussian regime: Z^n hypothesis, chi-squared concentration, MC checks");
    for (std::size_t n : {2u, 5u, 10u, 16u, 24u}) {
        try {
            GaussianThresholdReport rep =
                gaussian_threshold(*catalog_lookup("Z^" + std::to_string(n)).basis);
            if (std::fabs(rep.sigma2_sharp - 0.25 / static_cast<double>(n)) > 1e-12)
                c.expect(false, "Z^n sharp threshold wrong at n = " + std::to_string(n));
        } catch (const HypothesisFailed&) {
            c.expect(false, "hypothesis failed on Z^" + std::to_string(n));
        }
    }
    double hi = chi2_cdf(1.5 * 100.0, 100);
    double lo = chi2_cdf(0.6 * 100.0, 100);
    c.expect(hi >= 0.99, "chi2_cdf(150;100) = " + fmt(hi) + " < 0.99");
    c.expect(lo <= 0.01, "chi2_cdf(60;100) = " + fmt(lo) + " > 0.01");
    c.note("chi2_cdf(150;100) = " + fmt(hi) + ", chi2_cdf(60;100) = " + fmt(lo));

    MatrixR hex(2, {1.0, -0.5, 0.0, std::sqrt(3.0) / 2.0});
    LatticeBasis b(hex);
    double prev = -1, prev_se = 0;
    for (double sigma : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        auto rep =
            perr_mc_gaussian(b, sigma, 100000, 4000 + static_cast<std::uint64_t>(sigma * 100));
        if (rep.p_e < prev - 3.0 * (rep.uncertainty + prev_se))
            c.expect(false, "P_e not nondecreasing in sigma at " + fmt(sigma));
        prev = rep.p_e;
        prev_se = rep.uncertainty;
    }
    for (double sigma : {0.05, 0.1}) {
        auto rep =
            perr_mc_gaussian(b, sigma, 200000, 5000 + static_cast<std::uint64_t>(sigma * 100));
        double gap = std::fabs(rep.p_c - rep.t_term_pc.value_or(0.0));
        double se = rep.uncertainty + rep.t_term_se;
        c.expect(gap <= 3.0 * se + 1e-9,
                 "full vs T-term gap " + fmt(gap) + " > 3 SE at sigma = " + fmt(sigma));
    }
}

}  // namespace

int main() {
    std::printf("latbab acceptance suite\n");
    criterion1_table1();
    criterion2_protocol_exactness();
    criterion3_worked_examples();
    criterion4_fig3();
    criterion5_closed_form();
    criterion6_bounds();
    criterion7_eq8_sweep();
    criterion8_fcc_permutations();
    criterion9_geometry_conservation();
    criterion10_gaussian();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
