#ifndef DYNDMA_PIPELINE_HPP
#define DYNDMA_PIPELINE_HPP

#include <optional>
#include <string>

#include "dyndma/aggregation.hpp"
#include "dyndma/dividing.hpp"
#include "dyndma/dss.hpp"
#include "dyndma/inp_io.hpp"

namespace dyndma {

// Everything the full run needs; file paths may be empty when the caller
// passes parsed objects directly (see run_pipeline overload).
struct RunConfig {
    std::string network_path;
    std::string partition_path;
    double demand_multiplier = 1.0;
    std::optional<int> clusters; // default: optimal_cluster_count(n)
    GaParams ga;
    std::optional<std::string> installed_path;
    std::optional<std::string> costs_path;
    std::optional<std::string> out_path;    // report JSON; stdout when absent
    std::optional<std::string> dot_dir;     // directory for DOT exports
    std::size_t exhaustive_threshold = 4096; // use exhaustive search up to this many configs
    std::string generated_at;               // stamped into the report
};

struct PipelineOutcome {
    DssReport report;
    int exit_code = 0; // 0 feasible, 3 no feasible configuration
    MsNetwork ms;
    std::optional<AggregationResult> aggregation;
    Network opened_network; // aggregated layout with intra-cluster boundary pipes opened
    Partition aggregated_partition;
};

// Full flow: parse -> validate -> baseline rows -> MS network -> aggregate ->
// open intra-cluster boundary pipes -> re-simulate -> dividing optimization if
// the minimum service level is still violated -> DSS ranking -> report.
PipelineOutcome run_pipeline(const RunConfig& config);

// Same, over already-parsed inputs (partition need not cover reservoirs yet).
PipelineOutcome run_pipeline(const RunConfig& config, const Network& network,
                             const Partition& partition_in,
                             const std::optional<InstalledDevices>& installed_in,
                             const std::map<std::string, double>* device_costs = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace dyndma

#endif
