#ifndef DYNDMA_DSS_HPP
#define DYNDMA_DSS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dyndma/dividing.hpp"
#include "dyndma/ms_network.hpp"
#include "dyndma/model.hpp"

namespace dyndma {

// Devices physically present from the prior partitioning.
struct InstalledDevices {
    std::set<std::string> flow_meters;
    std::set<std::string> gate_valves;
};

// Reads the current division off the network itself: an open boundary pipe
// carries a flow meter, a closed one a gate valve.
InstalledDevices installed_from_statuses(const Network& network,
                                         const std::set<std::string>& boundary);

DividingConfig config_from_installed(const InstalledDevices& installed,
                                     const std::set<std::string>& boundary);

struct DssSolution {
    Genes genes;
    std::vector<std::string> gene_order;
    MetricsRow metrics;
    int reused_flow_meters = 0;
    int new_flow_meters = 0;
    std::optional<double> new_device_cost; // only when a cost table is supplied
    int rank = 0;

    std::map<std::string, Device> devices() const; // link id -> assigned device
};

// Orders feasible dividing solutions by (most reused flow meters, fewest flow
// meters, highest resilience, genes); with a cost table the first criterion
// becomes lowest total new-device cost. Deduplicates identical gene vectors.
std::vector<DssSolution> rank_solutions(const Network& network, const Partition& partition,
                                        const std::vector<Individual>& solutions,
                                        const std::vector<std::string>& gene_order,
                                        const InstalledDevices& installed,
                                        const std::map<std::string, double>* device_costs = nullptr);

struct ScenarioInfo {
    std::string network_path;
    std::string partition_path;
    double demand_multiplier = 1.0;
    double h_star = 0.0;
    std::optional<std::uint64_t> seed;
    std::optional<int> clusters;
    std::string generated_at; // informational only; excluded from determinism checks
};

struct GaSummary {
    bool ran = false;
    bool skipped = false;
    std::string skip_reason;
    std::string method; // "ga" or "exhaustive" when ran
    std::uint64_t seed = 0;
    std::size_t evaluations = 0;
    std::optional<double> best_infeasible_shortfall;
};

struct DssReport {
    ScenarioInfo scenario;
    std::vector<MetricsRow> rows;
    std::vector<DssSolution> solutions;
    GaSummary ga;
};

// A layout to simulate and report: a named partition/config pair at some
// demand multiplier. Null partition means the un-partitioned network with
// every pipe open. A non-null network overrides the report's base network
// (used for aggregated layouts where intra-cluster pipes were opened).
struct LayoutSpec {
    std::string name;
    const Partition* partition = nullptr;
    const DividingConfig* config = nullptr;
    double demand_multiplier = 1.0;
    const Network* network = nullptr;
};

// Simulates every layout and assembles the rows plus the ranked solution
// list. Solver failures are rethrown with the layout name attached.
DssReport build_report(const Network& network, const ScenarioInfo& scenario,
                       const std::vector<LayoutSpec>& layouts,
                       const std::vector<DssSolution>& ranked);

} // namespace dyndma

#endif
