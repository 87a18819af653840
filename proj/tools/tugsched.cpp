// Command-line front end: generate, solve, validate, oracle, export-mip,
// benchmark, report.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tugsched/alns.hpp"
#include "tugsched/construction.hpp"
#include "tugsched/error.hpp"
#include "tugsched/generator.hpp"
#include "tugsched/io.hpp"
#include "tugsched/mip.hpp"
#include "tugsched/oracle.hpp"
#include "tugsched/report.hpp"
#include "tugsched/validator.hpp"

namespace {

using namespace tug;

int thread_cap() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("BARGE_ALNS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            n = std::min(n, v);
        }
    }
    return n;
}

Penalties parse_penalties(const std::string& text) {
    Penalties p;
    double v[3];
    char tail;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &tail) != 3) {
        throw SchemaError("--penalties expects three comma-separated numbers: time_window,working_hours,unserved");
    }
    p.time_window = v[0];
    p.working_hours = v[1];
    p.unserved = v[2];
    return p;
}

struct SearchFlags {
    std::uint64_t seed = 1;
    int multistart = 1;
    int step = 0;
    int family_b = 4;
    double t_init = 100.0;
    double cooling = 0.98;
    double t_min = 10.0;
    int iter_max = 200;
    std::string penalties;
    bool regret_literal = false;
    double time_limit = 0.0;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Random seed");
        app->add_option("--multistart", multistart, "Independent runs, best kept")->check(CLI::PositiveNumber);
        app->add_option("--step", step, "Removals per destroy (0 = 15% of routed entities)");
        app->add_option("--family-b", family_b, "typeE family drawn with probability 1/b")->check(CLI::Range(2, 1000));
        app->add_option("--t-init", t_init, "Initial temperature");
        app->add_option("--cooling", cooling, "Cooling factor per iteration");
        app->add_option("--t-min", t_min, "Reheat threshold");
        app->add_option("--iter-max", iter_max, "Stop after this many iterations without a new best");
        app->add_option("--penalties", penalties, "time_window,working_hours,unserved");
        app->add_flag("--regret-literal", regret_literal, "Insert the smallest-regret entity first");
        app->add_option("--time-limit", time_limit, "Wall-clock cap per run in seconds (0 = none)");
    }

    SearchConfig config() const {
        SearchConfig c;
        c.seed = seed;
        c.step = step;
        c.family_b = family_b;
        c.t_initial = t_init;
        c.cooling = cooling;
        c.t_min = t_min;
        c.iter_max_no_improve = iter_max;
        c.regret_literal = regret_literal;
        if (!penalties.empty()) {
            c.penalties = parse_penalties(penalties);
        }
        if (time_limit > 0.0) {
            c.time_limit_seconds = time_limit;
        }
        return c;
    }
};

int cmd_generate(int row, const std::string& topology, std::uint64_t seed, const std::string& out) {
    const InstanceData d = generate(row, parse_topology(topology), seed);
    build_instance(d);
    if (out.empty() || out == "-") {
        std::cout << canonical(to_json(d));
    } else {
        write_instance(out, d);
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, const SearchFlags& flags, const std::string& out,
              const std::string& stats_path, const std::string& weights_path) {
    const Instance inst = read_instance(instance_path);
    const SearchConfig cfg = flags.config();
    const SearchResult res = solve_multistart(inst, cfg, flags.multistart, thread_cap());
    const Penalties pen = cfg.penalties.value_or(inst.penalties());
    const std::string doc = canonical(solution_report(inst, res.best, pen));
    if (out.empty() || out == "-") {
        std::cout << doc;
    } else {
        write_text(out, doc);
    }
    if (!stats_path.empty()) {
        std::ofstream s(stats_path);
        write_trace_csv(s, res.stats.trace);
    }
    if (!weights_path.empty()) {
        std::ofstream s(weights_path);
        write_weights_csv(s, res.stats.weights);
    }
    std::cerr << "seed " << res.stats.seed << ": initial " << res.stats.initial_loss << ", final "
              << res.loss.total << " after " << res.stats.iterations << " iterations\n";
    const bool clean = complete(res.best) && validate(inst, res.best).empty() && res.loss.penalties() == 0.0;
    return clean ? 0 : 2;
}

int cmd_validate(const std::string& instance_path, const std::string& solution_path, bool use_schedule,
                 const std::string& out) {
    const Instance inst = read_instance(instance_path);
    const Json doc = read_json(solution_path);
    const Solution sol = solution_from_json(doc);
    std::vector<Violation> v;
    const auto schedule = schedule_from_json(doc);
    if (use_schedule && schedule) {
        v = validate(inst, sol, *schedule);
    } else {
        v = validate(inst, sol);
    }
    const Json report = {{"feasible", v.empty()}, {"violations", to_json(v)}};
    if (out.empty() || out == "-") {
        std::cout << canonical(report);
    } else {
        write_text(out, canonical(report));
    }
    return v.empty() ? 0 : 2;
}

int cmd_oracle(const std::string& instance_path, int max_nodes, const std::string& out) {
    const Instance inst = read_instance(instance_path);
    try {
        const OracleSolution best = optimum(inst, OracleLimits{max_nodes});
        const std::string doc = canonical(solution_report(inst, best.solution, inst.penalties()));
        if (out.empty() || out == "-") {
            std::cout << doc;
        } else {
            write_text(out, doc);
        }
        return 0;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    }
}

int cmd_export(const std::string& instance_path, const std::string& out, std::size_t cap) {
    const Instance inst = read_instance(instance_path);
    MipConfig cfg;
    cfg.max_variables = cap;
    const LpModel m = export_lp(inst, cfg);
    if (out.empty() || out == "-") {
        std::cout << m.text;
    } else {
        write_text(out, m.text);
    }
    std::cerr << m.variables << " variables, " << m.constraints << " constraints\n";
    return 0;
}

int cmd_benchmark(const std::vector<int>& rows, const std::string& topology, int repeats, const SearchFlags& flags,
                  double best_known, const std::string& out) {
    std::ostringstream table;
    table << "row,topology,repeat,seed,construction_s,alns_s,initial_loss,final_loss,improvement_pct\n";
    table.precision(10);
    for (int row : rows) {
        std::vector<double> finals;
        for (int r = 0; r < repeats; ++r) {
            const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(r);
            const Instance inst = build_instance(generate(row, parse_topology(topology), seed));
            SearchConfig cfg = flags.config();
            cfg.seed = seed;
            cfg.record_trace = false;
            const SearchResult res = solve(inst, cfg);
            const double init = res.stats.initial_loss;
            const double fin = res.loss.total;
            double pct = 0.0;
            if (best_known > 0.0 && init - best_known > 0.0) {
                pct = 100.0 * (init - fin) / (init - best_known);
            } else if (init > 0.0) {
                pct = 100.0 * (init - fin) / init;
            }
            finals.push_back(fin);
            table << row << ',' << topology << ',' << r + 1 << ',' << seed << ',' << res.stats.construction_seconds
                  << ',' << res.stats.search_seconds << ',' << init << ',' << fin << ',' << pct << '\n';
        }
        if (!finals.empty()) {
            const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
            double mean = 0.0;
            for (double f : finals) {
                mean += f;
            }
            mean /= static_cast<double>(finals.size());
            table << row << ',' << topology << ",best,,,,," << *lo << ",\n";
            table << row << ',' << topology << ",worst,,,,," << *hi << ",\n";
            table << row << ',' << topology << ",mean,,,,," << mean << ",\n";
        }
    }
    if (out.empty() || out == "-") {
        std::cout << table.str();
    } else {
        write_text(out, table.str());
    }
    return 0;
}

int cmd_report(const std::string& instance_path, const std::string& solution_path, const std::string& svg,
               const std::string& geojson) {
    const Instance inst = read_instance(instance_path);
    const Solution sol = solution_from_json(read_json(solution_path));
    const RouteMap map = render_route_map(inst, sol);
    write_text(svg, map.svg);
    write_text(geojson, map.geojson);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-trip tugboat scheduling: generate, solve, validate and inspect instances"};
    app.require_subcommand(1);

    int row = 1;
    std::string topology = "oceanic";
    std::uint64_t gen_seed = 1;
    std::string out;
    auto* gen = app.add_subcommand("generate", "Write a seeded instance at a preset scale");
    gen->add_option("--row", row, "Preset row 1..6")->required();
    gen->add_option("--topology", topology, "oceanic or inland");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("-o,--output", out, "Output file (default stdout)");

    std::string instance_path, solution_path, stats_path, weights_path;
    SearchFlags flags;
    auto* solve_cmd = app.add_subcommand("solve", "Construct and improve a solution");
    solve_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("-o,--output", out, "Solution file (default stdout)");
    solve_cmd->add_option("--stats", stats_path, "Per-iteration CSV");
    solve_cmd->add_option("--weights", weights_path, "Per-segment operator weight CSV");
    flags.attach(solve_cmd);

    bool use_schedule = false;
    auto* val = app.add_subcommand("validate", "Check a solution against every constraint");
    val->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    val->add_option("solution", solution_path)->required()->check(CLI::ExistingFile);
    val->add_flag("--use-schedule", use_schedule, "Check the schedule stored in the solution file");
    val->add_option("-o,--output", out, "Violation report (default stdout)");

    int max_nodes = 12;
    auto* orc = app.add_subcommand("oracle", "Exact optimum by enumeration (tiny instances)");
    orc->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    orc->add_option("--max-nodes", max_nodes, "Refuse larger instances");
    orc->add_option("-o,--output", out, "Solution file (default stdout)");

    std::size_t cap = 1'000'000;
    auto* mip = app.add_subcommand("export-mip", "Write the model as a CPLEX LP file");
    mip->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    mip->add_option("-o,--output", out, "LP file (default stdout)");
    mip->add_option("--max-variables", cap, "Refuse larger models");

    std::vector<int> rows{1};
    int repeats = 10;
    double best_known = 0.0;
    SearchFlags bench_flags;
    auto* bench = app.add_subcommand("benchmark", "Run preset instances and tabulate results");
    bench->add_option("--rows", rows, "Preset rows")->delimiter(',');
    bench->add_option("--topology", topology, "oceanic or inland");
    bench->add_option("--repeats", repeats, "Seeds per row")->check(CLI::PositiveNumber);
    bench->add_option("--best-known", best_known, "Reference loss for the improvement column");
    bench->add_option("-o,--output", out, "CSV table (default stdout)");
    bench_flags.attach(bench);

    std::string svg = "routes.svg", geojson = "routes.geojson";
    auto* rep = app.add_subcommand("report", "Draw the routes as SVG and GeoJSON");
    rep->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    rep->add_option("solution", solution_path)->required()->check(CLI::ExistingFile);
    rep->add_option("--svg", svg, "SVG output");
    rep->add_option("--geojson", geojson, "GeoJSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(row, topology, gen_seed, out);
        if (solve_cmd->parsed()) return cmd_solve(instance_path, flags, out, stats_path, weights_path);
        if (val->parsed()) return cmd_validate(instance_path, solution_path, use_schedule, out);
        if (orc->parsed()) return cmd_oracle(instance_path, max_nodes, out);
        if (mip->parsed()) return cmd_export(instance_path, out, cap);
        if (bench->parsed()) return cmd_benchmark(rows, topology, repeats, bench_flags, best_known, out);
        if (rep->parsed()) return cmd_report(instance_path, solution_path, svg, geojson);
    } catch (const tug::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
