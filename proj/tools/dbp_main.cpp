// Command-line front end for the distributed Babai protocol: simulation,
// reachable sets, and communication-rate reports.

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

json rate_report_json(const RateReport& rep) {
    json sensors = json::array();
    for (std::size_t m = 0; m < rep.sensors.size(); ++m) {
        const SensorRate& s = rep.sensors[m];
        json js = {{"m", m + 1},
                   {"q", rep.q[m]},
                   {"H_joint", s.h_joint},
                   {"H_u", s.h_u},
                   {"H_s_given_u", s.h_s_given_u}};
        if (rep.method == RateReport::Method::MonteCarlo) js["se"] = s.se;
        sensors.push_back(js);
    }
    json j = {{"method", rep.method == RateReport::Method::Exact ? "exact" : "monte-carlo"},
              {"sensors", sensors},
              {"sum_rate", rep.sum_rate},
              {"bound",
               {{"n_log2_A", rep.bound_n_log2_a},
                {"log2_det", rep.bound_log2_det},
                {"sum_log2_q", rep.bound_sum_log2_q},
                {"total", rep.bound_total}}}};
    if (rep.method == RateReport::Method::MonteCarlo) j["samples"] = rep.samples;
    return j;
}

const char* provenance_name(ReachableSet::Provenance p) {
    switch (p) {
        case ReachableSet::Provenance::ExactEnumeration: return "exact-enumeration";
        case ReachableSet::Provenance::Sampled: return "sampled";
        case ReachableSet::Provenance::Full: return "full";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed Babai protocol tools"};
    app.require_subcommand(1);

    std::string lattice, source = "uniform:A=5", out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::int64_t max_den = 1000000;
    app.add_option("--format", format, "sweep output format: csv (default) or json");
    app.fallthrough();

    auto add_common = [&](CLI::App* cmd, bool needs_lattice) {
        if (needs_lattice)
            cmd->add_option("--lattice", lattice, "lattice file or catalog name")->required();
        cmd->add_option("--source", source, "source spec: uniform:A=5 | gauss:sigma=0.1");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--max-den", max_den, "max denominator for ratio recovery");
    };

    auto* sim = app.add_subcommand("simulate", "run the protocol and check decoder agreement");
    std::size_t trials = 100000;
    sim->add_option("--trials", trials, "number of trials")->required();
    sim->add_option("--seed", seed, "rng seed")->required();
    add_common(sim, true);

    auto* rate = app.add_subcommand("rate", "communication-rate report");
    bool exact = false;
    std::size_t samples = 1000000;
    rate->add_flag("--exact", exact, "exact 2-D product-uniform computation");
    rate->add_option("--samples", samples, "Monte Carlo sample count");
    rate->add_option("--seed", seed, "rng seed (required unless --exact)");
    add_common(rate, true);

    auto* sets = app.add_subcommand("sets", "reachable side-information sets S_m");
    sets->add_option("--seed", seed, "rng seed for the sampling fallback");
    add_common(sets, true);

    auto* fig3 = app.add_subcommand("sweep-fig3", "rate sweep over bases (1,0),(1/m,sqrt(1-1/m^2))");
    int m_min = 2, m_max = 120;
    double a_width = 5.0;
    fig3->add_option("--m-min", m_min, "first m");
    fig3->add_option("--m-max", m_max, "last m");
    fig3->add_option("--A", a_width, "uniform source width");
    fig3->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::Output out(out_path);
        if (sim->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            SourceSpec src = SourceSpec::parse(source);
            SimulationResult res = simulate(b, src, trials, seed, nullptr, max_den);
            json sensors = json::array();
            for (const auto& t : res.sensors) {
                json freqs = json::array();
                for (const auto& [key, count] : t.symbol_freqs)
                    freqs.push_back({{"u", key.first}, {"s", key.second}, {"count", count}});
                json vals = json::array();
                for (long long v : t.set.values) vals.push_back(v);
                sensors.push_back({{"m", t.m + 1},
                                   {"q", t.q.convert_to<long long>()},
                                   {"set", vals},
                                   {"set_provenance", provenance_name(t.set.provenance)},
                                   {"symbol_freqs", freqs}});
            }
            cli::write_json(out, json{{"lattice", lattice},
                                      {"source", src.str()},
                                      {"trials", res.trials},
                                      {"seed", seed},
                                      {"agreement", res.agreement},
                                      {"mismatches", res.mismatches},
                                      {"sensors", sensors}});
        } else if (rate->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            SourceSpec src = SourceSpec::parse(source);
            RateReport rep;
            if (exact) {
                if (src.kind != SourceSpec::Kind::Uniform)
                    throw UnsupportedForExact("dbp rate --exact: uniform sources only");
                rep = rate_exact_uniform(b, src.a, max_den);
            } else {
                if (!rate->count("--seed"))
                    throw ParseError("dbp rate: --seed is required for Monte Carlo");
                rep = rate_monte_carlo(b, src, samples, seed, max_den);
            }
            cli::write_json(out, rate_report_json(rep));
        } else if (sets->parsed()) {
            LatticeBasis b = load_lattice(lattice);
            SourceSpec src = SourceSpec::parse(source);
            auto rows = ratio_rows(b, max_den);
            json arr = json::array();
            for (std::size_t m = 0; m < b.dim(); ++m) {
                ReachableSet s = reachable_set(b, m, src, rows, 10000000, true, seed ^ (m + 1));
                json vals = json::array();
                for (long long v : s.values) vals.push_back(v);
                arr.push_back({{"m", m + 1},
                               {"q", s.q.convert_to<long long>()},
                               {"provenance", provenance_name(s.provenance)},
                               {"values", vals}});
            }
            cli::write_json(out, json{{"lattice", lattice}, {"source", src.str()}, {"sets", arr}});
        } else if (fig3->parsed()) {
            auto rows = fig3_sweep(m_min, m_max, a_width);
            std::vector<std::vector<std::string>> csv;
            for (const auto& r : rows)
                csv.push_back({std::to_string(r.m), cli::fmt(r.a), cli::fmt(r.h_u2),
                               cli::fmt(r.h_u1s1), cli::fmt(r.sum_rate), cli::fmt(r.bound)});
            cli::write_rows(out, format, "sweep-fig3",
                            {{"m_min", std::to_string(m_min)},
                             {"m_max", std::to_string(m_max)},
                             {"A", cli::fmt(a_width)}},
                            {"m", "a", "H_U2", "H_U1S1", "sum_rate", "bound"}, csv);
        }
        return cli::kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
}
