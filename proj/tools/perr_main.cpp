// Command-line front end for error-probability computation: closed forms,
// the 3-D polyhedral pipeline, Monte Carlo, bounds, and the tabulated
// sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "latbab/latbab.hpp"

using namespace latbab;
using nlohmann::json;

namespace {

json perr_report_json(const ErrorProbabilityReport& rep) {
    json j = {{"p_e", rep.p_e},
              {"p_c", rep.p_c},
              {"method", perr_method_name(rep.method)},
              {"uncertainty", rep.uncertainty},
              {"bound_on_pc", rep.bound_on_pc}};
    if (!rep.per_permutation.empty()) {
        json per = json::array();
        for (const auto& [perm, pe] : rep.per_permutation)
            per.push_back({{"permutation", perm}, {"p_e", pe}});
        j["per_permutation"] = per;
        j["permutation"] = rep.permutation;
        j["delta3"] = rep.delta3;
    }
    if (rep.cell) j["cell"] = cell_type_name(*rep.cell);
    if (!rep.cell_vertices.empty()) j["cell_vertices"] = rep.cell_vertices;
    if (rep.t_term_pc) {
        j["t_term_pc"] = *rep.t_term_pc;
        j["t_term_se"] = rep.t_term_se;
    }
    return j;
}

// Bound inputs for a named catalog entry (published sizes) or a lattice file
// (n <= 3, covering radius from the Voronoi cell).
BoundInputs bound_inputs_for(const std::string& name_or_path) {
    try {
        CatalogEntry e = catalog_lookup(name_or_path);
        if (e.babai_sizes && e.r_cov) return BoundInputs::from_sizes(*e.babai_sizes, *e.r_cov);
        if (e.basis) {
            if (e.basis->dim() <= 3 || e.r_cov) {
                double rc = e.r_cov ? *e.r_cov : voronoi_cell(*e.basis).r_cov;
                return BoundInputs::from_sizes(e.basis->babai_sizes(), rc);
            }
        }
        throw UnknownLattice("perr bounds: no size/covering-radius data for " + name_or_path);
    } catch (const UnknownLattice&) {
        LatticeBasis b = parse_lattice_file(name_or_path);
        if (b.dim() > 3)
            throw UnsupportedDimension(
                "perr bounds: covering radius for n > 3 comes only from the catalog");
        return BoundInputs::from_sizes(b.babai_sizes(), voronoi_cell(b).r_cov);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Babai-point error probability tools"};
    app.require_subcommand(1);

    std::string lattice, out_path, dist = "uniform";
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::size_t samples = 1000000, workers = 1;
    double tol_feas = 1e-9, tol_dedup = 1e-7, tol_conorm = 1e-9;
    app.add_option("--format", format, "sweep output format: csv (default) or json");
    app.add_option("--tol-feas", tol_feas, "half-space feasibility tolerance");
    app.add_option("--tol-dedup", tol_dedup, "vertex deduplication tolerance (relative)");
    app.add_option("--tol-conorm", tol_conorm, "zero-conorm classification threshold");
    app.fallthrough();

    auto* closed2d = app.add_subcommand("closed2d", "closed-form P_e for basis {(1,0),(a,b)}");
    double a_param = 0, b_param = 1;
    closed2d->add_option("--a", a_param, "a in [-1/2, 0]")->required();
    closed2d->add_option("--b", b_param, "b > 0")->required();
    closed2d->add_option("--out", out_path, "output path");

    auto* poly3d = app.add_subcommand("poly3d", "exact polyhedral P_e for a 3-D lattice");
    bool no_perm = false;
    poly3d->add_option("--lattice", lattice, "lattice file or catalog name")->required();
    poly3d->add_flag("--no-perm-search", no_perm, "evaluate only the given column order");
    poly3d->add_option("--out", out_path, "output path");

    auto* mc = app.add_subcommand("mc", "Monte Carlo P_e");
    mc->add_option("--lattice", lattice, "lattice file or catalog name")->required();
    mc->add_option("--dist", dist, "uniform | gauss:sigma=S")->required();
    mc->add_option("--samples", samples, "sample count");
    mc->add_option("--seed", seed, "rng seed")->required();
    mc->add_option("--workers", workers, "worker streams");
    mc->add_option("--out", out_path, "output path");

    auto* bounds = app.add_subcommand("bounds", "Chebyshev / Exclusion / combined bounds on P_c");
    bounds->add_option("--lattice", lattice, "catalog name or lattice file")->required();
    bounds->add_option("--out", out_path, "output path");

    auto* eq8 = app.add_subcommand("sweep-eq8", "well-rounded family sweep over beta");
    std::size_t steps = 24;
    eq8->add_option("--steps", steps, "grid steps");
    eq8->add_option("--out", out_path, "output path");

    auto* scatter = app.add_subcommand("scatter", "random obtuse-superbase scatter");
    std::size_t count = 100;
    scatter->add_option("--count", count, "accepted rows")->required();
    scatter->add_option("--seed", seed, "rng seed")->required();
    scatter->add_option("--out", out_path, "output path");

    auto* table1 = app.add_subcommand("table1", "error/density table for the named 3-D lattices");
    table1->add_option("--out", out_path, "output path");

    auto* fig7 = app.add_subcommand("fig7", "minimum P_e against packing density (2-D)");
    fig7->add_option("--steps", steps, "grid steps");
    fig7->add_option("--out", out_path, "output path");

    auto* fig8 = app.add_subcommand("fig8", "Gaussian-noise counterpart of fig7");
    std::string sigmas_arg = "0.05,0.1,0.15,0.2";
    std::size_t density_steps = 10;
    fig8->add_option("--sigmas", sigmas_arg, "comma-separated noise deviations");
    fig8->add_option("--steps", density_steps, "density grid steps");
    fig8->add_option("--samples", samples, "samples per grid point");
    fig8->add_option("--seed", seed, "rng seed")->required();
    fig8->add_option("--out", out_path, "output path");

    auto* ancheck = app.add_subcommand("an-condition", "Chebyshev condition for the A_n family");
    std::size_t an_n = 3;
    ancheck->add_option("--n", an_n, "dimension")->required();
    ancheck->add_option("--out", out_path, "output path");

    auto* gauss = app.add_subcommand("gauss-threshold", "variance threshold diagnostics");
    gauss->add_option("--lattice", lattice, "lattice file or catalog name")->required();
    std::string gsigmas = "";
    gauss->add_option("--sigmas", gsigmas, "comma-separated sigmas to evaluate");
    gauss->add_option("--out", out_path, "output path");

    CLI11_PARSE(app, argc, argv);

    auto parse_list = [](const std::string& s) {
        Vec v;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            v.push_back(std::stod(s.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return v;
    };

    try {
        cli::Output out(out_path);
        if (closed2d->parsed()) {
            cli::write_json(out, perr_report_json(perr_2d_closed_form(a_param, b_param)));
        } else if (poly3d->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            GeomTol gt{tol_feas, tol_dedup};
            cli::write_json(out,
                            perr_report_json(perr_3d_polyhedral(b, !no_perm, gt, tol_conorm)));
        } else if (mc->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            ErrorProbabilityReport rep;
            if (dist.rfind("gauss", 0) == 0) {
                SourceSpec src = SourceSpec::parse(dist);
                rep = perr_mc_gaussian(b, src.sigma, samples, seed, workers);
            } else if (dist == "uniform" || dist.rfind("uniform", 0) == 0) {
                rep = perr_mc_uniform(b, samples, seed, workers);
            } else {
                throw ParseError("perr mc: --dist must be uniform or gauss:sigma=S");
            }
            json j = perr_report_json(rep);
            j["samples"] = samples;
            j["seed"] = seed;
            j["workers"] = workers;
            cli::write_json(out, j);
        } else if (bounds->parsed()) {
            BoundInputs in = bound_inputs_for(lattice);
            json j = {{"lattice", lattice},
                      {"n", in.n},
                      {"r_cov", in.r_cov},
                      {"sizes", in.a},
                      {"m", in.m_count()},
                      {"delta", in.delta()},
                      {"delta1", in.delta1()}};
            try {
                j["chebyshev_pc"] = chebyshev_bound(in).p_c;
            } catch (const ConditionFailed& e) {
                j["chebyshev_pc"] = nullptr;
                j["chebyshev_condition_failed"] = e.what();
            }
            j["exclusion_pc"] = exclusion_bound(in).p_c;
            try {
                j["combined_pc"] = combined_bound(in).p_c;
            } catch (const ConditionFailed& e) {
                j["combined_pc"] = nullptr;
                j["combined_condition_failed"] = e.what();
            }
            cli::write_json(out, j);
            if (j.contains("chebyshev_condition_failed")) return cli::kExitCondition;
        } else if (eq8->parsed()) {
            auto rows = wellrounded_sweep(steps);
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({cli::fmt(r.beta), cli::fmt(r.delta), cli::fmt(r.p_e),
                               cell_type_name(r.cell),
                               r.prism_p_e >= 0 ? cli::fmt(r.prism_p_e) : ""});
            cli::write_rows(out, format, "sweep-eq8", {{"steps", std::to_string(steps)}},
                            {"beta", "delta3", "p_e", "cell", "prism_p_e"}, csv);
        } else if (scatter->parsed()) {
            auto rows = random_superbase_scatter(count, seed);
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({cli::fmt(r.delta3), cli::fmt(r.p_e), cell_type_name(r.cell)});
            cli::write_rows(out, format, "scatter",
                            {{"count", std::to_string(count)}, {"seed", std::to_string(seed)}},
                            {"delta3", "p_e", "cell"}, csv);
        } else if (table1->parsed()) {
            auto rows = run_table1();
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({r.name, cell_type_name(r.cell), cli::fmt(r.delta3), cli::fmt(r.p_e)});
            cli::write_rows(out, format, "table1", {}, {"lattice", "cell", "delta3", "p_e"},
                            csv);
        } else if (fig7->parsed()) {
            auto rows = fig7_sweep(steps);
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({cli::fmt(r.delta2), cli::fmt(r.a_star), cli::fmt(r.p_e)});
            cli::write_rows(out, format, "fig7", {{"steps", std::to_string(steps)}},
                            {"delta2", "a_star", "p_e"}, csv);
        } else if (fig8->parsed()) {
            auto rows = fig8_sweep(parse_list(sigmas_arg), density_steps, samples, seed);
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({cli::fmt(r.sigma), cli::fmt(r.delta2), cli::fmt(r.a),
                               cli::fmt(r.b), cli::fmt(r.p_e), cli::fmt(r.se),
                               cli::fmt(r.t_term_pc), cli::fmt(r.t_term_se)});
            cli::write_rows(out, format, "fig8",
                            {{"sigmas", sigmas_arg},
                             {"steps", std::to_string(density_steps)},
                             {"samples", std::to_string(samples)},
                             {"seed", std::to_string(seed)}},
                            {"sigma", "delta2", "a", "b", "p_e", "se", "t_pc", "t_se"}, csv);
        } else if (ancheck->parsed()) {
            AnConditionReport rep = an_condition_check(an_n);
            cli::write_json(out, json{{"n", rep.n},
                                      {"sum_a2_over_12", rep.lhs},
                                      {"r_cov_squared", rep.rhs},
                                      {"condition_holds", rep.holds}});
        } else if (gauss->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            GaussianThresholdReport rep =
                gaussian_threshold(b, gsigmas.empty() ? Vec{} : parse_list(gsigmas));
            json diag = json::array();
            for (const auto& d : rep.diagnostics)
                diag.push_back({{"sigma", d.sigma}, {"z", d.z}, {"chi2_cdf", d.cdf}});
            cli::write_json(out, json{{"sigma2_sharp", rep.sigma2_sharp},
                                      {"sigma2_relaxed", rep.sigma2_relaxed},
                                      {"r_pack", rep.r_pack},
                                      {"babai_sizes", rep.a},
                                      {"diagnostics", diag}});
        }
        return cli::kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
}
