#include "dyndma/dss.hpp"

#include <algorithm>

#include "dyndma/errors.hpp"

namespace dyndma {

InstalledDevices installed_from_statuses(const Network& network,
                                         const std::set<std::string>& boundary) {
    InstalledDevices installed;
    for (const std::string& id : boundary) {
        const Link* l = network.find_link(id);
        if (!l) continue;
        if (l->status == LinkStatus::open)
            installed.flow_meters.insert(id);
        else
            installed.gate_valves.insert(id);
    }
    return installed;
}

DividingConfig config_from_installed(const InstalledDevices& installed,
                                     const std::set<std::string>& boundary) {
    DividingConfig config;
    for (const std::string& id : boundary)
        config.assignment[id] =
            installed.gate_valves.count(id) ? Device::gate_valve : Device::flow_meter;
    return config;
}

std::map<std::string, Device> DssSolution::devices() const {
    std::map<std::string, Device> out;
    for (std::size_t i = 0; i < genes.size(); ++i)
        out[gene_order[i]] = genes[i] ? Device::flow_meter : Device::gate_valve;
    return out;
}

std::vector<DssSolution> rank_solutions(const Network& network, const Partition& partition,
                                        const std::vector<Individual>& solutions,
                                        const std::vector<std::string>& gene_order,
                                        const InstalledDevices& installed,
                                        const std::map<std::string, double>* device_costs) {
    std::vector<DssSolution> out;
    std::set<Genes> seen;
    for (const Individual& ind : solutions) {
        if (!seen.insert(ind.genes).second) continue;
        DssSolution s;
        s.genes = ind.genes;
        s.gene_order = gene_order;

        int reused = 0;
        double cost = 0.0;
        for (std::size_t i = 0; i < ind.genes.size(); ++i) {
            const std::string& link = gene_order[i];
            bool is_fm = ind.genes[i] != 0;
            bool reuse = is_fm ? installed.flow_meters.count(link) > 0
                               : installed.gate_valves.count(link) > 0;
            if (is_fm && reuse) ++reused;
            if (!reuse && device_costs) {
                auto it = device_costs->find(link);
                if (it != device_costs->end()) cost += it->second;
            }
        }
        s.reused_flow_meters = reused;
        s.new_flow_meters = ind.flow_meters - reused;
        if (device_costs) s.new_device_cost = cost;

        s.metrics.layout = "solution";
        s.metrics.n_ec = static_cast<int>(gene_order.size());
        s.metrics.n_fm = ind.flow_meters;
        s.metrics.n_gv = static_cast<int>(gene_order.size()) - ind.flow_meters;
        s.metrics.balance = balance_index(network, partition);
        s.metrics.stats = ind.stats;
        s.metrics.resilience = ind.resilience;
        out.push_back(std::move(s));
    }

    std::sort(out.begin(), out.end(), [&](const DssSolution& a, const DssSolution& b) {
        if (device_costs) {
            if (*a.new_device_cost != *b.new_device_cost)
                return *a.new_device_cost < *b.new_device_cost;
        } else if (a.reused_flow_meters != b.reused_flow_meters) {
            return a.reused_flow_meters > b.reused_flow_meters;
        }
        if (*a.metrics.n_fm != *b.metrics.n_fm) return *a.metrics.n_fm < *b.metrics.n_fm;
        if (a.metrics.resilience != b.metrics.resilience)
            return a.metrics.resilience > b.metrics.resilience;
        return a.genes < b.genes;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
    return out;
}

DssReport build_report(const Network& network, const ScenarioInfo& scenario,
                       const std::vector<LayoutSpec>& layouts,
                       const std::vector<DssSolution>& ranked) {
    DssReport report;
    report.scenario = scenario;
    report.solutions = ranked;
    for (const LayoutSpec& layout : layouts) {
        try {
            const Network& base = layout.network ? *layout.network : network;
            Network scenario_net = layout.demand_multiplier == 1.0
                                       ? base
                                       : scale_demands(base, layout.demand_multiplier);
            HydraulicState state = solve(scenario_net, layout.config);
            if (!state.converged)
                throw SolverError("solver hit the iteration cap (residual " +
                                  std::to_string(state.max_residual) + " m3/s)");
            report.rows.push_back(partition_metrics(scenario_net, layout.partition, layout.config,
                                                    state, layout.name, layout.demand_multiplier));
        } catch (const Error& e) {
            throw SolverError("layout '" + layout.name + "': " + e.what());
        }
    }
    return report;
}

} // namespace dyndma
