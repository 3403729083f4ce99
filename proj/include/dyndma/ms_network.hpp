#ifndef DYNDMA_MS_NETWORK_HPP
#define DYNDMA_MS_NETWORK_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyndma/hydraulics.hpp"
#include "dyndma/model.hpp"

namespace dyndma {

// One-to-one image of an original boundary pipe, weighted by its length.
struct BoundaryHyperlink {
    std::string link_id; // original link id
    std::string a, b;    // boundary node ids
    double weight = 0.0; // m
};

// Synthetic edge joining two boundary nodes of the same DMA, weighted by the
// intra-DMA shortest path between them.
struct InternalHyperlink {
    std::string id; // synthetic, unique
    std::string a, b;
    double weight = 0.0;                   // m, shortest-path length inside the DMA
    std::vector<std::string> witness_path; // original link ids realizing the weight
    std::string dma;
};

// Contracted multiscale layout: only boundary nodes survive, joined by
// boundary hyper-links across DMAs and complete internal hyper-link graphs
// within each DMA.
struct MsNetwork {
    std::vector<std::string> ms_nodes;                         // sorted boundary node ids
    std::map<std::string, std::string> node_dma;               // ms node -> DMA label
    std::vector<BoundaryHyperlink> boundary_hyperlinks;        // sorted by link id
    std::vector<InternalHyperlink> internal_hyperlinks;        // sorted by id
    std::map<std::string, std::vector<std::string>> dma_index; // DMA -> its boundary nodes (sorted)
};

// Contracts the partitioned network to its multiscale layout. Throws Error
// when two boundary nodes of one DMA are mutually unreachable inside it.
MsNetwork build_ms_network(const Network& network, const Partition& partition);

// Cluster balance index I_b: population standard deviation of per-DMA
// junction counts (reservoirs excluded).
double balance_index(const Network& network, const Partition& partition);

// Topologically optimal cluster count, round(k * n^0.28) with k calibrated so
// that n=184 gives 4; never below 2. Throws Error for n < 2.
int optimal_cluster_count(std::size_t n);

// One row of the decision report. Device counts and partition metrics are
// absent for un-partitioned layouts.
struct MetricsRow {
    std::string layout;
    double demand_multiplier = 1.0;
    std::optional<int> n_ec;
    std::optional<int> n_fm;
    std::optional<int> n_gv;
    std::optional<double> balance; // I_b
    PressureStats stats;
    double resilience = 0.0; // I_r
};

MetricsRow partition_metrics(const Network& network, const Partition* partition,
                             const DividingConfig* config, const HydraulicState& state,
                             const std::string& layout_name, double demand_multiplier = 1.0);

} // namespace dyndma

#endif
