#include "dyndma/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyndma/errors.hpp"

namespace dyndma {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

namespace {

// Adds the failing stage to the message while keeping the exception type, so
// the CLI can still map it to the right exit code.
template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ParseError(e.line(), std::string(stage) + ": " + e.what());
    } catch (const SolverError& e) {
        throw SolverError(std::string(stage) + ": " + e.what());
    } catch (const Error& e) {
        throw Error(std::string(stage) + ": " + e.what());
    }
}

Genes all_flow_meters(std::size_t n) { return Genes(n, 1); }

} // namespace

PipelineOutcome run_pipeline(const RunConfig& config, const Network& network,
                             const Partition& partition_in,
                             const std::optional<InstalledDevices>& installed_in,
                             const std::map<std::string, double>* device_costs) {
    PipelineOutcome out;

    with_stage("validate", [&] {
        auto violations = validate(network);
        if (!violations.empty())
            throw Error("network invalid: '" + violations.front().entity +
                        "': " + violations.front().rule + " (" +
                        std::to_string(violations.size()) + " violation(s))");
    });

    Partition partition = with_stage("bind-partition", [&] {
        Partition p = complete_partition(network, partition_in);
        auto violations = validate_partition(network, p);
        if (!violations.empty())
            throw Error("partition invalid: '" + violations.front().entity +
                        "': " + violations.front().rule);
        return p;
    });

    const double mult = config.demand_multiplier;
    const std::set<std::string> boundary0 = boundary_links(network, partition);
    const InstalledDevices installed =
        installed_in ? *installed_in : installed_from_statuses(network, boundary0);
    const DividingConfig current_config = config_from_installed(installed, boundary0);

    // Layouts accumulate here; simulated at the end by build_report.
    std::vector<LayoutSpec> layouts;
    Network all_open = open_links(network, {boundary0.begin(), boundary0.end()});
    layouts.push_back({"un-partitioned", nullptr, nullptr, 1.0, &all_open});
    if (mult != 1.0) layouts.push_back({"un-partitioned", nullptr, nullptr, mult, &all_open});

    const std::string c0 = std::to_string(partition.cluster_count()) + " DMAs";
    layouts.push_back({c0, &partition, &current_config, 1.0, nullptr});
    if (mult != 1.0) layouts.push_back({c0, &partition, &current_config, mult, nullptr});

    out.ms = with_stage("ms-build", [&] { return build_ms_network(network, partition); });

    const int c_target = config.clusters
                             ? *config.clusters
                             : optimal_cluster_count(network.nodes().size());
    out.aggregation = with_stage("aggregate", [&] {
        return girvan_newman_aggregate(network, partition, out.ms, c_target);
    });
    out.aggregated_partition = out.aggregation->new_partition;
    const std::set<std::string>& new_boundary = out.aggregation->new_boundary_links;

    // open the boundary pipes that fell inside the bigger districts
    std::set<std::string> interior;
    for (const std::string& id : boundary0)
        if (new_boundary.count(id) == 0) interior.insert(id);
    out.opened_network = open_links(network, interior);

    DividingConfig inherited = config_from_installed(installed, new_boundary);
    const std::string c1 = std::to_string(c_target) + " DMAs";
    layouts.push_back({c1, &out.aggregated_partition, &inherited, mult, &out.opened_network});

    // decide whether the dividing phase is needed
    Network scenario_net =
        mult == 1.0 ? out.opened_network : scale_demands(out.opened_network, mult);
    HydraulicState inherited_state = with_stage("simulate", [&] {
        HydraulicState s = solve(scenario_net, &inherited);
        if (!s.converged)
            throw SolverError("aggregated layout did not converge (residual " +
                              std::to_string(s.max_residual) + " m3/s)");
        return s;
    });
    PressureStats inherited_stats = pressure_stats(scenario_net, inherited_state);

    GaSummary ga;
    ga.seed = config.ga.seed;
    std::vector<DssSolution> ranked;
    std::vector<std::string> gene_order =
        boundary_gene_order(out.opened_network, out.aggregated_partition);
    DividingConfig best_config, virtual_config;

    if (inherited_stats.h_min >= network.design_pressure()) {
        ga.skipped = true;
        ga.skip_reason = "aggregated layout already satisfies h_min >= h*";
        out.exit_code = 0;
    } else {
        OptimizeResult opt = with_stage("divide", [&] {
            if (gene_order.size() < 63 &&
                (std::size_t{1} << gene_order.size()) <= config.exhaustive_threshold) {
                ga.method = "exhaustive";
                return exhaustive_optimize(scenario_net, out.aggregated_partition,
                                           config.exhaustive_threshold);
            }
            ga.method = "ga";
            return ga_optimize(scenario_net, out.aggregated_partition, config.ga);
        });
        ga.ran = true;
        ga.evaluations = opt.evaluations;
        ga.best_infeasible_shortfall = opt.best_infeasible_shortfall;
        ranked = rank_solutions(scenario_net, out.aggregated_partition, opt.solutions,
                                opt.gene_order, installed, device_costs);
        out.exit_code = ranked.empty() ? 3 : 0;
        if (!ranked.empty()) {
            best_config = config_from_genes(ranked.front().genes, opt.gene_order);
            layouts.push_back({c1 + " optimized", &out.aggregated_partition, &best_config, mult,
                               &out.opened_network});
        }
    }

    virtual_config = config_from_genes(all_flow_meters(gene_order.size()), gene_order);
    layouts.push_back({c1 + " virtual partitioning", &out.aggregated_partition, &virtual_config,
                       mult, &out.opened_network});

    ScenarioInfo scenario;
    scenario.network_path = config.network_path;
    scenario.partition_path = config.partition_path;
    scenario.demand_multiplier = mult;
    scenario.h_star = network.design_pressure();
    scenario.seed = config.ga.seed;
    scenario.clusters = c_target;
    scenario.generated_at = config.generated_at;

    out.report = with_stage("report", [&] { return build_report(network, scenario, layouts, ranked); });
    out.report.ga = ga;
    return out;
}

PipelineOutcome run_pipeline(const RunConfig& config) {
    Network network = with_stage(
        "parse-network", [&] { return parse_network(read_file(config.network_path)); });
    Partition partition = with_stage(
        "parse-partition", [&] { return parse_partition(read_file(config.partition_path)); });
    std::optional<InstalledDevices> installed;
    if (config.installed_path)
        installed = with_stage("parse-installed",
                               [&] { return parse_installed(read_file(*config.installed_path)); });
    std::map<std::string, double> costs;
    const std::map<std::string, double>* costs_ptr = nullptr;
    if (config.costs_path) {
        with_stage("parse-costs", [&] {
            nlohmann::json j = nlohmann::json::parse(read_file(*config.costs_path), nullptr, false);
            if (j.is_discarded()) throw ParseError(0, "invalid device-cost JSON");
            for (auto it = j.begin(); it != j.end(); ++it)
                costs[it.key()] = it.value().get<double>();
            return 0;
        });
        costs_ptr = &costs;
    }

    PipelineOutcome out = run_pipeline(config, network, partition, installed, costs_ptr);

    if (config.dot_dir) {
        std::filesystem::create_directories(*config.dot_dir);
        Partition completed = complete_partition(network, partition);
        write_file(*config.dot_dir + "/partition.dot", emit_graph(network, &completed));
        write_file(*config.dot_dir + "/ms.dot", emit_graph(network, out.ms));
        if (out.aggregation)
            write_file(*config.dot_dir + "/aggregated.dot",
                       emit_graph(network, &out.aggregation->new_partition));
    }
    if (config.out_path) write_file(*config.out_path, emit_report(out.report));
    return out;
}

} // namespace dyndma
