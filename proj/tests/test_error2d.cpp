#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "latbab/error_analysis.hpp"
#include "latbab/rng.hpp"

using namespace latbab;

TEST_CASE("closed form: orthogonal, hexagonal and an interior point") {
    CHECK(perr_2d_closed_form(0.0, 1.3).p_e == 0.0);
    CHECK(perr_2d_closed_form(-0.5, std::sqrt(3.0) / 2.0).p_e ==
          Catch::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(perr_2d_closed_form(-0.25, 1.0).p_e == Catch::Approx(3.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("closed form rejects out-of-domain bases") {
    CHECK_THROWS_AS(perr_2d_closed_form(-0.6, 1.0), PreconditionViolation);
    CHECK_THROWS_AS(perr_2d_closed_form(0.2, 1.0), PreconditionViolation);
    CHECK_THROWS_AS(perr_2d_closed_form(-0.4, 0.5), PreconditionViolation);
    CHECK_THROWS_AS(perr_2d_closed_form(-0.1, -1.0), PreconditionViolation);
}

TEST_CASE("closed form returns the six Voronoi vertices") {
    double a = -0.5, b = std::sqrt(3.0) / 2.0;
    auto rep = perr_2d_closed_form(a, b);
    REQUIRE(rep.cell_vertices.size() == 6);
    // Hexagonal lattice: vertices (+-1/2, +-1/(2 sqrt 3)) and (0, +-1/sqrt 3).
    bool found_apex = false;
    for (const auto& v : rep.cell_vertices) {
        if (std::fabs(v[0]) < 1e-12) {
            CHECK(std::fabs(v[1]) == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
            found_apex = true;
        } else {
            CHECK(std::fabs(v[0]) == Catch::Approx(0.5).epsilon(1e-12));
            CHECK(std::fabs(v[1]) == Catch::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-12));
        }
    }
    CHECK(found_apex);
}

TEST_CASE("closed form agrees with Monte Carlo on random feasible bases") {
    Rng rng(5150);
    for (int t = 0; t < 20; ++t) {
        double a = rng.uniform(-0.5, 0.0);
        double bmin = std::sqrt(std::max(0.0, 1.0 - a * a));
        double b = rng.uniform(bmin + 1e-3, 1.6);
        MatrixR v(2, {1.0, a, 0.0, b});
        auto closed = perr_2d_closed_form(a, b);
        auto mc = perr_mc_uniform(LatticeBasis(v), 1000000, 600 + static_cast<std::uint64_t>(t));
        double se = std::max(mc.uncertainty, 1e-5);
        INFO("a=" << a << " b=" << b);
        REQUIRE(std::fabs(closed.p_e - mc.p_e) <= 3.0 * se);
    }
}

TEST_CASE("closed form stays within [0, 1/12] and vanishes only at a = 0") {
    // Grid check over the feasible region.
    for (int ia = 0; ia <= 100; ++ia) {
        double a = -0.5 * static_cast<double>(ia) / 100.0;
        double bmin = std::sqrt(std::max(0.0, 1.0 - a * a));
        for (int ib = 0; ib <= 100; ++ib) {
            double b = bmin + (2.0 - bmin) * static_cast<double>(ib) / 100.0;
            double pe = perr_2d_closed_form(a, b).p_e;
            REQUIRE(pe >= 0.0);
            REQUIRE(pe <= 1.0 / 12.0 + 1e-12);
            if (a < -1e-9) REQUIRE(pe > 0.0);
        }
    }
}

TEST_CASE("partial derivative in a is nonpositive (finite differences)") {
    const double h = 1e-6;
    for (int ia = 1; ia < 50; ++ia) {
        double a = -0.5 + 0.5 * static_cast<double>(ia) / 50.0;
        for (double b : {1.05, 1.2, 1.5}) {
            double f1 = perr_2d_closed_form(a - h, b).p_e;
            double f2 = perr_2d_closed_form(a + h, b).p_e;
            double deriv = (f2 - f1) / (2.0 * h);
            double want = (-1.0 - 2.0 * a) / (4.0 * b * b);
            REQUIRE(deriv <= 1e-6);
            REQUIRE(deriv == Catch::Approx(want).margin(1e-6));
        }
    }
}

TEST_CASE("P_e decreases in b at fixed a") {
    for (double a : {-0.5, -0.3, -0.1}) {
        double prev = 1.0;
        for (double b = 1.0; b <= 2.0; b += 0.05) {
            double pe = perr_2d_closed_form(a, b).p_e;
            REQUIRE(pe <= prev + 1e-15);
            prev = pe;
        }
    }
}

TEST_CASE("density minimizer: boundary cases and an interior density") {
    const double pi = 3.14159265358979323846;
    DensityMinimizer at_quarter = min_perr_given_density_2d(pi / 4.0);
    CHECK(at_quarter.a_star == 0.0);
    CHECK(at_quarter.report.p_e == 0.0);

    DensityMinimizer hexagonal = min_perr_given_density_2d(pi / (2.0 * std::sqrt(3.0)));
    CHECK(hexagonal.a_star == Catch::Approx(-0.5).margin(1e-9));
    CHECK(hexagonal.report.p_e == Catch::Approx(1.0 / 12.0).epsilon(1e-9));

    // Interior density: compare against a 1-D numerical minimization of F
    // over the Minkowski-feasible range of a at b = pi/(4 Delta).
    double delta = 0.85;
    DensityMinimizer interior = min_perr_given_density_2d(delta);
    double b = pi / (4.0 * delta);
    double best_pe = 1e9, best_a = 1.0;
    for (int i = 0; i <= 2000000; ++i) {
        double a = -0.5 * static_cast<double>(i) / 2000000.0;
        if (a * a + b * b < 1.0 - 1e-12) continue;
        double pe = (-a - a * a) / (4.0 * b * b);
        if (pe < best_pe) {
            best_pe = pe;
            best_a = a;
        }
    }
    CHECK(interior.a_star == Catch::Approx(best_a).margin(1e-5));
    CHECK(interior.report.p_e == Catch::Approx(best_pe).margin(1e-9));
    CHECK(interior.a_star == Catch::Approx(-std::sqrt(1.0 - b * b)).margin(1e-11));
}

TEST_CASE("density minimizer rejects out-of-range densities") {
    CHECK_THROWS_AS(min_perr_given_density_2d(0.0), DensityOutOfRange);
    CHECK_THROWS_AS(min_perr_given_density_2d(0.95), DensityOutOfRange);
}

TEST_CASE("uniform Monte Carlo on an orthogonal lattice never errs") {
    MatrixR diag(2);
    diag(0, 0) = 0.8;
    diag(1, 1) = 1.7;
    auto rep = perr_mc_uniform(LatticeBasis(diag), 100000, 5);
    CHECK(rep.p_e == 0.0);
}

TEST_CASE("uniform Monte Carlo reproduces 1/12 on the hexagonal lattice") {
    MatrixR v(2, {1.0, -0.5, 0.0, std::sqrt(3.0) / 2.0});
    auto rep = perr_mc_uniform(LatticeBasis(v), 1000000, 99);
    CHECK(std::fabs(rep.p_e - 1.0 / 12.0) <= 3.0 * rep.uncertainty);
}

TEST_CASE("worker partitioning is deterministic and consistent") {
    MatrixR v(2, {1.0, -0.4, 0.0, 1.1});
    LatticeBasis b(v);
    auto one = perr_mc_uniform(b, 200000, 31, 1);
    auto one_again = perr_mc_uniform(b, 200000, 31, 1);
    CHECK(one.p_e == one_again.p_e);
    auto four = perr_mc_uniform(b, 200000, 31, 4);
    auto four_again = perr_mc_uniform(b, 200000, 31, 4);
    CHECK(four.p_e == four_again.p_e);
    // Different partitions agree statistically.
    double se = std::max({one.uncertainty, four.uncertainty, 1e-5});
    CHECK(std::fabs(one.p_e - four.p_e) <= 6.0 * se);
}
