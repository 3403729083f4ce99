#include "dyndma/aggregation.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "dyndma/errors.hpp"

namespace dyndma {

WeightedGraph ms_to_graph(const MsNetwork& ms) {
    WeightedGraph g;
    g.node_ids = ms.ms_nodes;
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(g.node_ids.size()); ++i) index[g.node_ids[i]] = i;
    for (const auto& h : ms.boundary_hyperlinks)
        g.edges.push_back({h.link_id, index.at(h.a), index.at(h.b), h.weight, true});
    for (const auto& h : ms.internal_hyperlinks)
        g.edges.push_back({h.id, index.at(h.a), index.at(h.b), h.weight, false});
    return g;
}

namespace {

struct ShortestPaths {
    std::vector<double> dist;
    std::vector<double> sigma; // shortest-path counts (exact integers in double)
};

// Dijkstra with per-edge relaxation so parallel edges count as distinct paths.
ShortestPaths dijkstra_counts(const WeightedGraph& g,
                              const std::vector<std::vector<int>>& incidence, int source) {
    const int n = static_cast<int>(g.node_ids.size());
    ShortestPaths sp;
    sp.dist.assign(n, std::numeric_limits<double>::infinity());
    sp.sigma.assign(n, 0.0);
    sp.dist[source] = 0.0;
    sp.sigma[source] = 1.0;

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, source});
    std::vector<bool> settled(n, false);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (settled[u]) continue;
        settled[u] = true;
        for (int ei : incidence[u]) {
            const WeightedEdge& e = g.edges[ei];
            int w = e.u == u ? e.v : e.u;
            if (w == u) continue; // self-loop
            double nd = sp.dist[u] + e.weight;
            if (nd < sp.dist[w]) {
                sp.dist[w] = nd;
                sp.sigma[w] = sp.sigma[u];
                pq.push({nd, w});
            } else if (nd == sp.dist[w] && !settled[w]) {
                sp.sigma[w] += sp.sigma[u];
            }
        }
    }
    return sp;
}

} // namespace

std::map<std::string, double> edge_betweenness(const WeightedGraph& graph) {
    const int n = static_cast<int>(graph.node_ids.size());
    for (const WeightedEdge& e : graph.edges)
        if (!(e.weight > 0.0))
            throw Error("edge_betweenness: non-positive weight on edge '" + e.id + "'");

    std::vector<std::vector<int>> incidence(n);
    for (int ei = 0; ei < static_cast<int>(graph.edges.size()); ++ei) {
        incidence[graph.edges[ei].u].push_back(ei);
        if (graph.edges[ei].v != graph.edges[ei].u) incidence[graph.edges[ei].v].push_back(ei);
    }

    std::vector<ShortestPaths> from(n);
    for (int s = 0; s < n; ++s) from[s] = dijkstra_counts(graph, incidence, s);

    std::map<std::string, double> score;
    for (const WeightedEdge& e : graph.edges) score[e.id] = 0.0;

    // Pair (s,t) contributes n_e(s,t) / n(s,t) to every edge e, where n_e
    // counts the shortest s-t paths traversing e. The per-pair accumulation
    // order is fixed so results are reproducible bit for bit.
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            double total = from[s].sigma[t];
            if (total == 0.0) continue; // different components
            double d_st = from[s].dist[t];
            for (const WeightedEdge& e : graph.edges) {
                if (e.u == e.v) continue;
                double through = 0.0;
                if (from[s].dist[e.u] + e.weight + from[t].dist[e.v] == d_st)
                    through += from[s].sigma[e.u] * from[t].sigma[e.v];
                if (from[s].dist[e.v] + e.weight + from[t].dist[e.u] == d_st)
                    through += from[s].sigma[e.v] * from[t].sigma[e.u];
                if (through > 0.0) score[e.id] += through / total;
            }
        }
    }
    return score;
}

int component_count(const WeightedGraph& graph) {
    const int n = static_cast<int>(graph.node_ids.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (const WeightedEdge& e : graph.edges) {
        int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

namespace {

std::vector<int> component_labels(const WeightedGraph& graph) {
    const int n = static_cast<int>(graph.node_ids.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const WeightedEdge& e : graph.edges) {
        int a = find(e.u), b = find(e.v);
        if (a != b) parent[a] = b;
    }
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = find(i);
    return label;
}

} // namespace

AggregationResult girvan_newman_aggregate(const Network& network, const Partition& partition,
                                          const MsNetwork& ms, int c_target) {
    if (ms.ms_nodes.empty())
        throw Error("girvan_newman_aggregate: MS network is empty (single-DMA partition?)");
    const int dma_count = static_cast<int>(ms.dma_index.size());
    if (c_target < 1 || c_target > dma_count)
        throw Error("girvan_newman_aggregate: target cluster count " + std::to_string(c_target) +
                    " outside [1, " + std::to_string(dma_count) + "]");

    WeightedGraph g = ms_to_graph(ms);
    AggregationResult result;

    if (component_count(g) > c_target)
        throw Error("girvan_newman_aggregate: MS network already has more than " +
                    std::to_string(c_target) + " components");

    while (component_count(g) < c_target) {
        auto betweenness = edge_betweenness(g);
        int best = -1;
        double best_score = -1.0;
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            const WeightedEdge& e = g.edges[ei];
            if (!e.removable) continue;
            double score = betweenness.at(e.id);
            if (score > best_score ||
                (score == best_score && best >= 0 && e.id < g.edges[best].id)) {
                best = ei;
                best_score = score;
            }
        }
        if (best < 0)
            throw Error("girvan_newman_aggregate: no removable hyper-link left before reaching "
                        "the target component count");
        result.removed_edges_log.emplace_back(g.edges[best].id, best_score);
        g.edges.erase(g.edges.begin() + best);
    }

    // components -> super labels, named by their smallest member DMA
    std::vector<int> comp = component_labels(g);
    std::map<std::string, int> node_index;
    for (int i = 0; i < static_cast<int>(g.node_ids.size()); ++i) node_index[g.node_ids[i]] = i;
    std::map<std::string, int> dma_comp;
    for (const auto& [label, nodes] : ms.dma_index) {
        int c = comp[node_index.at(nodes.front())];
        for (const std::string& node : nodes)
            if (comp[node_index.at(node)] != c)
                throw Error("girvan_newman_aggregate: DMA '" + label +
                            "' was split across components");
        dma_comp[label] = c;
    }
    std::map<int, std::string> comp_name;
    for (const auto& [label, c] : dma_comp)
        if (comp_name.find(c) == comp_name.end())
            comp_name[c] = "S" + std::to_string(comp_name.size() + 1);
    for (const auto& [label, c] : dma_comp) result.super_labels[label] = comp_name.at(c);

    if (static_cast<int>(comp_name.size()) != c_target)
        throw Error("girvan_newman_aggregate: produced " + std::to_string(comp_name.size()) +
                    " super-clusters instead of " + std::to_string(c_target));

    for (const auto& [node_id, label] : partition.labels) {
        auto it = result.super_labels.find(label);
        if (it == result.super_labels.end())
            throw Error("girvan_newman_aggregate: node '" + node_id + "' carries label '" + label +
                        "' which has no boundary node in the MS network");
        result.new_partition.labels[node_id] = it->second;
    }

    result.new_boundary_links = boundary_links(network, result.new_partition);
    std::set<std::string> old_boundary = boundary_links(network, partition);
    for (const std::string& id : result.new_boundary_links)
        if (old_boundary.count(id) == 0)
            throw Error("girvan_newman_aggregate: new boundary link '" + id +
                        "' was not a boundary link before");
    return result;
}

} // namespace dyndma
