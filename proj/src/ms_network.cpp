#include "dyndma/ms_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dyndma/errors.hpp"

namespace dyndma {

namespace {

// Length-weighted Dijkstra inside one DMA, tracking the link sequence.
// Neighbors are expanded in sorted order so witness paths are deterministic.
struct DmaGraph {
    std::vector<std::string> nodes; // sorted
    std::map<std::string, int> index;
    struct Edge {
        int to;
        double length;
        std::string link_id;
    };
    std::vector<std::vector<Edge>> adj;
};

DmaGraph dma_subgraph(const Network& network, const Partition& partition,
                      const std::string& label) {
    DmaGraph g;
    for (const auto& [node_id, lab] : partition.labels)
        if (lab == label && network.find_node(node_id)) g.nodes.push_back(node_id);
    std::sort(g.nodes.begin(), g.nodes.end());
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) g.index[g.nodes[i]] = i;
    g.adj.resize(g.nodes.size());
    for (const Link& l : network.links()) {
        auto ia = g.index.find(l.from);
        auto ib = g.index.find(l.to);
        if (ia == g.index.end() || ib == g.index.end()) continue;
        if (ia->second == ib->second) continue; // self-loop never shortens a path
        g.adj[ia->second].push_back({ib->second, l.length, l.id});
        g.adj[ib->second].push_back({ia->second, l.length, l.id});
    }
    for (auto& edges : g.adj)
        std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
            return std::tie(x.to, x.link_id) < std::tie(y.to, y.link_id);
        });
    return g;
}

} // namespace

MsNetwork build_ms_network(const Network& network, const Partition& partition) {
    MsNetwork ms;
    std::set<std::string> boundary = boundary_links(network, partition);

    std::set<std::string> boundary_nodes;
    for (const std::string& link_id : boundary) {
        const Link* l = network.find_link(link_id);
        boundary_nodes.insert(l->from);
        boundary_nodes.insert(l->to);
    }
    ms.ms_nodes.assign(boundary_nodes.begin(), boundary_nodes.end());
    for (const std::string& n : ms.ms_nodes) {
        const std::string& label = *partition.label_of(n);
        ms.node_dma[n] = label;
        ms.dma_index[label].push_back(n);
    }

    for (const std::string& link_id : boundary) {
        const Link* l = network.find_link(link_id);
        ms.boundary_hyperlinks.push_back({l->id, l->from, l->to, l->length});
    }
    std::sort(ms.boundary_hyperlinks.begin(), ms.boundary_hyperlinks.end(),
              [](const auto& x, const auto& y) { return x.link_id < y.link_id; });

    // complete internal hyper-link graph per DMA via per-source Dijkstra
    for (const auto& [label, nodes] : ms.dma_index) {
        if (nodes.size() < 2) continue;
        DmaGraph g = dma_subgraph(network, partition, label);
        for (std::size_t si = 0; si < nodes.size(); ++si) {
            int s = g.index.at(nodes[si]);
            std::vector<double> dist(g.nodes.size(), std::numeric_limits<double>::infinity());
            std::vector<int> via_node(g.nodes.size(), -1);
            std::vector<std::string> via_link(g.nodes.size());
            dist[s] = 0.0;
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (const auto& e : g.adj[u]) {
                    double nd = d + e.length;
                    if (nd < dist[e.to]) {
                        dist[e.to] = nd;
                        via_node[e.to] = u;
                        via_link[e.to] = e.link_id;
                        pq.push({nd, e.to});
                    }
                }
            }
            for (std::size_t ti = si + 1; ti < nodes.size(); ++ti) {
                int t = g.index.at(nodes[ti]);
                if (!std::isfinite(dist[t]))
                    throw Error("build_ms_network: boundary nodes '" + nodes[si] + "' and '" +
                                nodes[ti] + "' are unreachable inside DMA '" + label + "'");
                std::vector<std::string> path;
                for (int cur = t; cur != s; cur = via_node[cur]) path.push_back(via_link[cur]);
                std::reverse(path.begin(), path.end());
                ms.internal_hyperlinks.push_back({"ms:" + label + ":" + nodes[si] + ":" + nodes[ti],
                                                  nodes[si], nodes[ti], dist[t], std::move(path),
                                                  label});
            }
        }
    }
    std::sort(ms.internal_hyperlinks.begin(), ms.internal_hyperlinks.end(),
              [](const auto& x, const auto& y) { return x.id < y.id; });
    return ms;
}

double balance_index(const Network& network, const Partition& partition) {
    std::map<std::string, int> sizes;
    for (const std::string& label : partition.dma_labels()) sizes[label] = 0;
    for (const Node& n : network.nodes()) {
        if (!n.is_junction()) continue;
        const std::string* lab = partition.label_of(n.id);
        if (lab && *lab != kSourceLabel) ++sizes[*lab];
    }
    if (sizes.empty()) return 0.0;
    double mean = 0.0;
    for (const auto& [label, count] : sizes) mean += count;
    mean /= sizes.size();
    double var = 0.0;
    for (const auto& [label, count] : sizes) var += (count - mean) * (count - mean);
    return std::sqrt(var / sizes.size());
}

int optimal_cluster_count(std::size_t n) {
    if (n < 2) throw Error("optimal_cluster_count: need at least 2 nodes");
    const double k = 4.0 / std::pow(184.0, 0.28); // calibrated: 184 nodes -> 4 clusters
    int c = static_cast<int>(std::lround(k * std::pow(static_cast<double>(n), 0.28)));
    return std::max(c, 2);
}

MetricsRow partition_metrics(const Network& network, const Partition* partition,
                             const DividingConfig* config, const HydraulicState& state,
                             const std::string& layout_name, double demand_multiplier) {
    MetricsRow row;
    row.layout = layout_name;
    row.demand_multiplier = demand_multiplier;
    if (partition) {
        row.n_ec = static_cast<int>(boundary_links(network, *partition).size());
        row.balance = balance_index(network, *partition);
    }
    if (config) {
        row.n_fm = config->flow_meter_count();
        row.n_gv = config->gate_valve_count();
    }
    row.stats = pressure_stats(network, state);
    row.resilience = resilience_index(network, state);
    return row;
}

} // namespace dyndma
