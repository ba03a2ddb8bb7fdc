// Command-line interface: counting, classification, search, bounds report,
// and the reproduction suite. All results are JSON on stdout; runs append a
// JSONL record to $CUBEDENSITY_LOG_DIR/runs.jsonl when that variable is set.
//
// Exit codes: 0 success, 2 usage error, 3 feasibility cap, 4 acceptance
// failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cubedensity/analytics.hpp"
#include "cubedensity/canonical.hpp"
#include "cubedensity/constructions.hpp"
#include "cubedensity/density.hpp"
#include "cubedensity/extremal.hpp"
#include "cubedensity/graphlets.hpp"
#include "cubedensity/reproduce.hpp"

namespace cd = cubedensity;

namespace {

constexpr const char* kVersion = "1.0.0";

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

// Named entities resolve before files.
cd::ConstructionSpec resolve_spec(const std::string& token, int n) {
    if (token == "empty") return cd::ExplicitSpec{cd::CubeConfig(n)};
    if (token == "full") return cd::ExplicitSpec{cd::CubeConfig::full(n)};
    if (cd::has_named(token)) return cd::NamedSpec{token};
    return cd::spec_from_json(load_json_file(token));
}

cd::CubeConfig resolve_pattern(const std::string& token) {
    if (cd::has_named(token)) return cd::named(token).config;
    return cd::config_from_json(load_json_file(token));
}

cd::VertexId parse_vertex(const std::string& token, int n) {
    if (static_cast<int>(token.size()) == n &&
        token.find_first_not_of("01") == std::string::npos)
        return cd::vertex_from_bitstring(token);
    return std::stoull(token);
}

void log_run(const std::string& command, const std::vector<std::string>& argv,
             std::uint64_t seed, long long wall_ms, const std::string& payload,
             nlohmann::json extra = {}) {
    const char* dir = std::getenv("CUBEDENSITY_LOG_DIR");
    if (!dir) return;
    nlohmann::json rec;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    rec["ts_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    rec["command"] = command;
    rec["argv"] = argv;
    rec["seed"] = seed;
    rec["wall_ms"] = wall_ms;
    char digest[32];
    std::snprintf(digest, sizeof digest, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(cd::fnv1a64(payload.data(), payload.size())));
    rec["digest"] = digest;
    rec["version"] = kVersion;
    if (!extra.is_null())
        for (auto& [k, v] : extra.items()) rec[k] = v;
    std::ofstream out(std::string(dir) + "/runs.jsonl", std::ios::app);
    out << rec.dump() << "\n";
}

struct Emitted {
    std::string payload;
    std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercube configuration densities: counting, classification, search"};
    app.set_version_flag("--version", kVersion);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (results are identical)");

    // count
    auto* count = app.add_subcommand("count", "count good sub-d-cubes of a set against a pattern");
    std::string count_pattern, count_set;
    int count_n = 0;
    std::uint64_t sampled = 0, count_seed = 0;
    std::string local_vertex;
    count->add_option("--pattern", count_pattern, "pattern name or config file")->required();
    count->add_option("--set", count_set, "set name, construction file, or empty/full")->required();
    count->add_option("--n", count_n, "ambient dimension")->required();
    count->add_option("--sampled", sampled, "Monte Carlo sample size (exact mode otherwise)");
    count->add_option("--seed", count_seed, "sampling seed");
    count->add_option("--local", local_vertex, "report the local count at this vertex");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "orbit atlas of all configurations of Q_d");
    int classify_d = 0;
    std::string classify_out;
    classify_cmd->add_option("--d", classify_d, "dimension (<= 4)")->required();
    classify_cmd->add_option("--out", classify_out, "also write the atlas JSON to this file");

    // search
    auto* search = app.add_subcommand("search", "stochastic lower-bound search");
    std::string search_pattern, search_init;
    int search_n = 0, search_restarts = 1;
    std::uint64_t search_seed = 0, search_steps = 0;
    double t0_fraction = 0.05, cooling = 0.995;
    search->add_option("--pattern", search_pattern)->required();
    search->add_option("--n", search_n)->required();
    search->add_option("--seed", search_seed);
    search->add_option("--restarts", search_restarts);
    search->add_option("--steps", search_steps, "proposals per restart (0 = default)");
    search->add_option("--init", search_init, "construction file for the initial set");
    search->add_option("--t0", t0_fraction, "initial temperature as a fraction of total");
    search->add_option("--cooling", cooling, "cooling ratio per sweep");

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite");
    std::string suite = "paper";
    bool reproduce_json = false;
    reproduce->add_option("--suite", suite, "paper or quick");
    reproduce->add_flag("--json", reproduce_json, "machine-readable report");

    // report
    auto* report = app.add_subcommand("report", "bounds table with finite-n construction values");
    int report_n = 12;
    std::string report_format = "json";
    report->add_option("--n", report_n, "ambient dimension for finite-n values");
    report->add_option("--format", report_format, "json or csv");

    // graphlet
    auto* graphlet = app.add_subcommand("graphlet", "induced pattern counts in an edge-list host");
    std::string graphlet_pattern, graphlet_host;
    graphlet->add_option("--pattern", graphlet_pattern, "k12, k22, 2k2, k13, or edge1")->required();
    graphlet->add_option("--host", graphlet_host, "edge-list JSON file {order, edges}")->required();

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    cd::set_thread_limit(threads);
    std::vector<std::string> args(argv + 1, argv + argc);
    auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - started)
            .count();
    };

    try {
        if (count->parsed()) {
            cd::CubeConfig pattern = resolve_pattern(count_pattern);
            auto spec = resolve_spec(count_set, count_n);
            nlohmann::json out;
            if (!local_vertex.empty()) {
                auto cons = cd::generate(spec, count_n, true);
                auto r = cd::local_count(pattern, *cons.materialized,
                                         parse_vertex(local_vertex, count_n));
                out = cd::local_density_json(r, count_n);
            } else if (sampled > 0) {
                auto cons = cd::generate(spec, count_n, false);
                auto r = cd::count_good_sampled(pattern, cons.member, count_n, sampled, count_seed);
                out = cd::density_json(r);
            } else {
                if (count_n > cd::kMaxExactAmbient)
                    throw cd::FeasibilityError(
                        "exact mode capped at n <= 24; pass --sampled N for n = " +
                            std::to_string(count_n),
                        cd::exact_cost(count_n, pattern.dim()));
                auto cons = cd::generate(spec, count_n, true);
                auto r = cd::count_good(pattern, *cons.materialized);
                out = cd::density_json(r);
            }
            std::string payload = out.dump(2);
            std::cout << payload << "\n";
            log_run("count", args, count_seed, elapsed_ms(), payload);
        } else if (classify_cmd->parsed()) {
            auto atlas = cd::classify(classify_d);
            std::string payload = cd::atlas_json(atlas).dump(2);
            std::cout << payload << "\n";
            if (!classify_out.empty()) {
                std::ofstream f(classify_out);
                f << payload << "\n";
            }
            log_run("classify", args, 0, elapsed_ms(), payload);
        } else if (search->parsed()) {
            cd::SearchParams params;
            params.seed = search_seed;
            params.restarts = search_restarts;
            params.max_steps = search_steps;
            params.schedule.t0_fraction = t0_fraction;
            params.schedule.cooling = cooling;
            if (!search_init.empty()) params.init = cd::spec_from_json(load_json_file(search_init));
            cd::CubeConfig pattern = resolve_pattern(search_pattern);
            auto result = cd::local_search(pattern, search_n, params);
            std::string payload = cd::search_json(result, params, search_n).dump(2);
            std::cout << payload << "\n";
            nlohmann::json extra;
            extra["h_key"] = cd::canonical_form(pattern).hex();
            extra["n"] = search_n;
            extra["best_fraction"] = cd::rat_string(result.best_fraction);
            log_run("search", args, search_seed, elapsed_ms(), payload, extra);
        } else if (reproduce->parsed()) {
            if (suite != "paper" && suite != "quick") {
                std::cerr << "unknown suite: " << suite << "\n";
                return 2;
            }
            auto results =
                cd::run_acceptance(suite == "paper" ? cd::Suite::paper : cd::Suite::quick, threads);
            std::string payload =
                reproduce_json ? cd::acceptance_json(results).dump(2) : cd::acceptance_table(results);
            std::cout << payload << (reproduce_json ? "\n" : "");
            log_run("reproduce", args, 0, elapsed_ms(), payload);
            if (!cd::all_passed(results)) return 4;
        } else if (report->parsed()) {
            std::string payload = report_format == "csv" ? cd::report_csv(report_n)
                                                         : cd::report_json(report_n).dump(2) + "\n";
            std::cout << payload;
            log_run("report", args, 0, elapsed_ms(), payload);
        } else if (graphlet->parsed()) {
            std::ifstream in(graphlet_host);
            if (!in) throw std::invalid_argument("cannot open host file: " + graphlet_host);
            std::stringstream buf;
            buf << in.rdbuf();
            cd::SmallGraph host = cd::graph_from_edge_list_json(buf.str());
            cd::SmallGraph pat;
            if (graphlet_pattern == "k12") pat = cd::patterns::k12();
            else if (graphlet_pattern == "k22") pat = cd::patterns::k22();
            else if (graphlet_pattern == "2k2") pat = cd::patterns::two_k2();
            else if (graphlet_pattern == "k13") pat = cd::patterns::k13();
            else if (graphlet_pattern == "edge1") pat = cd::patterns::edge_plus_isolated();
            else throw std::invalid_argument("unknown graphlet pattern: " + graphlet_pattern);
            nlohmann::json out;
            out["pattern"] = graphlet_pattern;
            out["order"] = host.order;
            out["edges"] = host.edge_count();
            out["count"] = cd::count_induced(pat, host);
            auto b12 = cd::check_k12_bound(host);
            auto b22 = cd::check_k22_bound(host);
            out["k12_bound"] = {{"count", b12.count},
                                {"bound", cd::rat_string(b12.bound)},
                                {"ok", b12.ok},
                                {"odd_variant", b12.odd_variant}};
            out["k22_bound"] = {{"count", b22.count},
                                {"bound", cd::rat_string(b22.bound)},
                                {"ok", b22.ok},
                                {"odd_variant", b22.odd_variant}};
            std::string payload = out.dump(2);
            std::cout << payload << "\n";
            log_run("graphlet", args, 0, elapsed_ms(), payload);
        }
    } catch (const cd::FeasibilityError& e) {
        std::cerr << "feasibility: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
