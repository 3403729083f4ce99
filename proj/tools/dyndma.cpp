// Command-line front end: one subcommand per stage of the reconfiguration
// flow, plus `pipeline` which chains them all.

#include <ctime>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyndma/errors.hpp"
#include "dyndma/pipeline.hpp"

namespace {

using namespace dyndma;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitSolver = 2;
constexpr int kExitInfeasible = 3;

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

GaParams ga_from_json(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw ParseError(0, "invalid GA-config JSON in '" + path + "'");
    GaParams ga;
    if (j.contains("population")) ga.population = j["population"].get<int>();
    if (j.contains("generations")) ga.generations = j["generations"].get<int>();
    if (j.contains("crossover_rate")) ga.crossover_rate = j["crossover_rate"].get<double>();
    if (j.contains("mutation_rate")) ga.mutation_rate = j["mutation_rate"].get<double>();
    if (j.contains("elitism")) ga.elitism = j["elitism"].get<int>();
    if (j.contains("seed")) ga.seed = j["seed"].get<std::uint64_t>();
    return ga;
}

void emit_to(const std::optional<std::string>& path, const std::string& content) {
    if (path)
        write_file(*path, content);
    else
        std::cout << content;
}

struct CommonArgs {
    std::string network_path;
    std::string partition_path;
    std::string config_path;
    std::string installed_path;
    std::string costs_path;
    std::string devices_path;
    std::string ga_config_path;
    std::string out_path;
    std::string dot_out;
    double multiplier = 1.0;
    int clusters = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t exhaustive_threshold = 4096;
};

// JSON run-config file provides defaults; explicit flags win.
void apply_config_file(const CLI::App& cmd, CommonArgs& args) {
    if (args.config_path.empty()) return;
    nlohmann::json j = nlohmann::json::parse(read_file(args.config_path), nullptr, false);
    if (j.is_discarded()) throw ParseError(0, "invalid run-config JSON in '" + args.config_path + "'");
    auto want = [&](const char* flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    if (j.contains("network") && want("--network")) args.network_path = j["network"];
    if (j.contains("partition") && want("--partition")) args.partition_path = j["partition"];
    if (j.contains("multiplier") && want("--multiplier")) args.multiplier = j["multiplier"];
    if (j.contains("clusters") && want("--clusters")) args.clusters = j["clusters"];
    if (j.contains("installed") && want("--installed")) args.installed_path = j["installed"];
    if (j.contains("costs") && want("--costs")) args.costs_path = j["costs"];
    if (j.contains("out") && want("--out")) args.out_path = j["out"];
    if (j.contains("dot_out") && want("--dot-out")) args.dot_out = j["dot_out"];
    if (j.contains("ga_config") && want("--ga-config")) args.ga_config_path = j["ga_config"];
    if (j.contains("exhaustive_threshold") && want("--exhaustive-threshold"))
        args.exhaustive_threshold = j["exhaustive_threshold"];
    if (j.contains("seed") && want("--seed")) {
        args.seed = j["seed"];
        args.seed_given = true;
    }
}

std::uint64_t pick_seed(CommonArgs& args) {
    if (!args.seed_given) {
        std::random_device rd;
        args.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::cerr << "seed: " << args.seed << " (chosen at random; pass --seed to reproduce)\n";
    }
    return args.seed;
}

int cmd_validate(const CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    auto violations = validate(network);
    for (const Violation& v : violations)
        std::cerr << v.entity << ": " << v.rule << "\n";
    return violations.empty() ? kExitOk : kExitInvalid;
}

int cmd_simulate(const CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    if (args.multiplier != 1.0) network = scale_demands(network, args.multiplier);

    std::optional<Partition> partition;
    if (!args.partition_path.empty()) {
        partition = complete_partition(network, parse_partition(read_file(args.partition_path)));
        auto violations = validate_partition(network, *partition);
        if (!violations.empty()) {
            for (const Violation& v : violations) std::cerr << v.entity << ": " << v.rule << "\n";
            return kExitInvalid;
        }
    }
    std::optional<DividingConfig> device_config;
    if (!args.devices_path.empty()) device_config = parse_config(read_file(args.devices_path));

    HydraulicState state = solve(network, device_config ? &*device_config : nullptr);
    if (!state.converged) {
        std::cerr << "solver hit the iteration cap: residual " << state.max_residual
                  << " m3/s, head change " << state.max_head_change << " m after "
                  << state.iterations << " iterations\n";
        return kExitSolver;
    }
    MetricsRow row = partition_metrics(network, partition ? &*partition : nullptr,
                                       device_config ? &*device_config : nullptr, state,
                                       "simulate", args.multiplier);
    DssReport report;
    report.scenario.network_path = args.network_path;
    report.scenario.partition_path = args.partition_path;
    report.scenario.demand_multiplier = args.multiplier;
    report.scenario.h_star = network.design_pressure();
    report.rows.push_back(row);
    emit_to(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
            emit_report(report));
    return kExitOk;
}

int cmd_ms_build(const CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    Partition partition =
        complete_partition(network, parse_partition(read_file(args.partition_path)));
    MsNetwork ms = build_ms_network(network, partition);
    if (!args.dot_out.empty()) write_file(args.dot_out, emit_graph(network, ms));

    nlohmann::ordered_json j;
    j["ms_nodes"] = ms.ms_nodes.size();
    j["boundary_hyperlinks"] = ms.boundary_hyperlinks.size();
    j["internal_hyperlinks"] = ms.internal_hyperlinks.size();
    j["dmas"] = ms.dma_index.size();
    emit_to(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
            j.dump(2) + "\n");
    return kExitOk;
}

int cmd_aggregate(const CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    Partition partition =
        complete_partition(network, parse_partition(read_file(args.partition_path)));
    MsNetwork ms = build_ms_network(network, partition);
    int c = args.clusters > 0 ? args.clusters : optimal_cluster_count(network.nodes().size());
    AggregationResult agg = girvan_newman_aggregate(network, partition, ms, c);
    for (const auto& [edge, betweenness] : agg.removed_edges_log)
        std::cerr << "removed " << edge << " (betweenness " << betweenness << ")\n";
    if (!args.dot_out.empty())
        write_file(args.dot_out, emit_graph(network, &agg.new_partition));
    emit_to(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
            emit_partition(agg.new_partition));
    return kExitOk;
}

int cmd_divide(CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    if (args.multiplier != 1.0) network = scale_demands(network, args.multiplier);
    Partition partition =
        complete_partition(network, parse_partition(read_file(args.partition_path)));

    GaParams ga;
    if (!args.ga_config_path.empty()) ga = ga_from_json(args.ga_config_path);
    ga.seed = pick_seed(args);

    std::set<std::string> boundary = boundary_links(network, partition);
    InstalledDevices installed =
        args.installed_path.empty()
            ? installed_from_statuses(network, boundary)
            : parse_installed(read_file(args.installed_path));
    std::map<std::string, double> costs;
    if (!args.costs_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_file(args.costs_path), nullptr, false);
        if (j.is_discarded()) throw ParseError(0, "invalid device-cost JSON");
        for (auto it = j.begin(); it != j.end(); ++it) costs[it.key()] = it.value().get<double>();
    }

    OptimizeResult opt;
    GaSummary summary;
    summary.ran = true;
    summary.seed = ga.seed;
    if (boundary.size() < 63 && (std::size_t{1} << boundary.size()) <= args.exhaustive_threshold) {
        summary.method = "exhaustive";
        opt = exhaustive_optimize(network, partition, args.exhaustive_threshold);
    } else {
        summary.method = "ga";
        opt = ga_optimize(network, partition, ga);
    }
    summary.evaluations = opt.evaluations;
    summary.best_infeasible_shortfall = opt.best_infeasible_shortfall;

    std::vector<DssSolution> ranked = rank_solutions(network, partition, opt.solutions,
                                                     opt.gene_order, installed,
                                                     costs.empty() ? nullptr : &costs);
    DssReport report;
    report.scenario.network_path = args.network_path;
    report.scenario.partition_path = args.partition_path;
    report.scenario.demand_multiplier = args.multiplier;
    report.scenario.h_star = network.design_pressure();
    report.scenario.seed = ga.seed;
    report.solutions = ranked;
    report.ga = summary;
    emit_to(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
            emit_report(report));
    return ranked.empty() ? kExitInfeasible : kExitOk;
}

int cmd_report(const CommonArgs& args) {
    Network network = parse_network(read_file(args.network_path));
    Partition partition =
        complete_partition(network, parse_partition(read_file(args.partition_path)));
    auto violations = validate_partition(network, partition);
    if (!violations.empty()) {
        for (const Violation& v : violations) std::cerr << v.entity << ": " << v.rule << "\n";
        return kExitInvalid;
    }

    std::set<std::string> boundary = boundary_links(network, partition);
    InstalledDevices installed =
        args.installed_path.empty()
            ? installed_from_statuses(network, boundary)
            : parse_installed(read_file(args.installed_path));
    DividingConfig current = config_from_installed(installed, boundary);

    Network all_open = open_links(network, boundary);
    std::vector<LayoutSpec> layouts;
    layouts.push_back({"un-partitioned", nullptr, nullptr, 1.0, &all_open});
    if (args.multiplier != 1.0)
        layouts.push_back({"un-partitioned", nullptr, nullptr, args.multiplier, &all_open});
    std::string name = std::to_string(partition.cluster_count()) + " DMAs";
    layouts.push_back({name, &partition, &current, 1.0, nullptr});
    if (args.multiplier != 1.0)
        layouts.push_back({name, &partition, &current, args.multiplier, nullptr});

    ScenarioInfo scenario;
    scenario.network_path = args.network_path;
    scenario.partition_path = args.partition_path;
    scenario.demand_multiplier = args.multiplier;
    scenario.h_star = network.design_pressure();
    scenario.generated_at = timestamp();
    DssReport report = build_report(network, scenario, layouts, {});
    emit_to(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
            emit_report(report));
    return kExitOk;
}

int cmd_pipeline(CommonArgs& args) {
    RunConfig config;
    config.network_path = args.network_path;
    config.partition_path = args.partition_path;
    config.demand_multiplier = args.multiplier;
    if (args.clusters > 0) config.clusters = args.clusters;
    if (!args.ga_config_path.empty()) config.ga = ga_from_json(args.ga_config_path);
    config.ga.seed = pick_seed(args);
    if (!args.installed_path.empty()) config.installed_path = args.installed_path;
    if (!args.costs_path.empty()) config.costs_path = args.costs_path;
    if (!args.out_path.empty()) config.out_path = args.out_path;
    if (!args.dot_out.empty()) config.dot_dir = args.dot_out;
    config.exhaustive_threshold = args.exhaustive_threshold;
    config.generated_at = timestamp();

    PipelineOutcome outcome = run_pipeline(config);
    if (!config.out_path) std::cout << emit_report(outcome.report);
    if (outcome.exit_code == kExitInfeasible)
        std::cerr << "no feasible dividing configuration found\n";
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic district-metered-area reconfiguration toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* cmd, bool needs_partition) {
        cmd->add_option("--network", args.network_path, "network INP file")->required();
        if (needs_partition)
            cmd->add_option("--partition", args.partition_path, "DMA partition CSV")->required();
        cmd->add_option("--out", args.out_path, "output file (default: stdout)");
        return cmd;
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a network file");
    validate_cmd->add_option("--network", args.network_path, "network INP file")->required();

    CLI::App* simulate_cmd =
        add_common(app.add_subcommand("simulate", "steady-state metrics for one layout"), false);
    simulate_cmd->add_option("--partition", args.partition_path, "DMA partition CSV");
    simulate_cmd->add_option("--devices", args.devices_path, "device-assignment JSON");
    simulate_cmd->add_option("--multiplier", args.multiplier, "demand multiplier");

    CLI::App* ms_cmd =
        add_common(app.add_subcommand("ms-build", "contract to the multiscale network"), true);
    ms_cmd->add_option("--dot-out", args.dot_out, "DOT file for the MS layout");

    CLI::App* agg_cmd = add_common(
        app.add_subcommand("aggregate", "merge DMAs into fewer districts"), true);
    agg_cmd->add_option("--clusters", args.clusters, "target district count");
    agg_cmd->add_option("--dot-out", args.dot_out, "DOT file for the aggregated layout");

    CLI::App* divide_cmd = add_common(
        app.add_subcommand("divide", "optimize device placement on boundary pipes"), true);
    divide_cmd->add_option("--multiplier", args.multiplier, "demand multiplier");
    divide_cmd->add_option("--seed", args.seed, "optimizer seed")->each([&](const std::string&) {
        args.seed_given = true;
    });
    divide_cmd->add_option("--ga-config", args.ga_config_path, "GA parameter JSON");
    divide_cmd->add_option("--installed", args.installed_path, "installed-devices JSON");
    divide_cmd->add_option("--costs", args.costs_path, "device-cost JSON");
    divide_cmd->add_option("--exhaustive-threshold", args.exhaustive_threshold,
                           "search exhaustively up to this many configurations");

    CLI::App* report_cmd = add_common(
        app.add_subcommand("report", "metrics rows for the current layout"), true);
    report_cmd->add_option("--multiplier", args.multiplier, "demand multiplier");
    report_cmd->add_option("--installed", args.installed_path, "installed-devices JSON");

    CLI::App* pipeline_cmd = add_common(
        app.add_subcommand("pipeline", "full reconfiguration flow"), true);
    pipeline_cmd->add_option("--multiplier", args.multiplier, "demand multiplier");
    pipeline_cmd->add_option("--clusters", args.clusters, "target district count");
    pipeline_cmd->add_option("--seed", args.seed, "optimizer seed")->each([&](const std::string&) {
        args.seed_given = true;
    });
    pipeline_cmd->add_option("--ga-config", args.ga_config_path, "GA parameter JSON");
    pipeline_cmd->add_option("--installed", args.installed_path, "installed-devices JSON");
    pipeline_cmd->add_option("--costs", args.costs_path, "device-cost JSON");
    pipeline_cmd->add_option("--dot-out", args.dot_out, "directory for DOT exports");
    pipeline_cmd->add_option("--exhaustive-threshold", args.exhaustive_threshold,
                             "search exhaustively up to this many configurations");
    pipeline_cmd->add_option("--config", args.config_path, "run-config JSON (flags override)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pipeline_cmd->parsed()) apply_config_file(*pipeline_cmd, args);
        if (validate_cmd->parsed()) return cmd_validate(args);
        if (simulate_cmd->parsed()) return cmd_simulate(args);
        if (ms_cmd->parsed()) return cmd_ms_build(args);
        if (agg_cmd->parsed()) return cmd_aggregate(args);
        if (divide_cmd->parsed()) return cmd_divide(args);
        if (report_cmd->parsed()) return cmd_report(args);
        if (pipeline_cmd->parsed()) return cmd_pipeline(args);
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
