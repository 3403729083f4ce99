#ifndef DYNDMA_AGGREGATION_HPP
#define DYNDMA_AGGREGATION_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dyndma/model.hpp"
#include "dyndma/ms_network.hpp"

namespace dyndma {

// Small undirected weighted multigraph used by the community operations.
struct WeightedEdge {
    std::string id;
    int u = 0;
    int v = 0;
    double weight = 1.0;
    bool removable = true; // false for intra-DMA hyper-links
};

struct WeightedGraph {
    std::vector<std::string> node_ids;
    std::vector<WeightedEdge> edges;
};

WeightedGraph ms_to_graph(const MsNetwork& ms);

// Weighted edge betweenness: each unordered reachable node pair distributes
// one unit over its shortest paths, split equally among ties. Deterministic;
// parallel edges are distinct paths. Throws Error on a non-positive weight.
std::map<std::string, double> edge_betweenness(const WeightedGraph& graph);

// Number of connected components (isolated nodes count).
int component_count(const WeightedGraph& graph);

struct AggregationResult {
    std::map<std::string, std::string> super_labels; // DMA label -> super-cluster label
    Partition new_partition;                         // induced on the original network
    std::set<std::string> new_boundary_links;
    std::vector<std::pair<std::string, double>> removed_edges_log; // (hyper-link id, betweenness)
};

// Classic Girvan-Newman on the MS network, restricted to boundary hyper-links
// so no DMA is ever split: remove the highest-betweenness boundary hyper-link
// (ties broken by lowest id), recompute, stop at exactly c_target components.
AggregationResult girvan_newman_aggregate(const Network& network, const Partition& partition,
                                          const MsNetwork& ms, int c_target);

} // namespace dyndma

#endif
