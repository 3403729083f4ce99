#include "support/oracles.hpp"

#include <algorithm>
#include <vector>

namespace dyndma::tests {

std::set<std::string> unreachable_oracle(const Network& network, const DividingConfig* config) {
    std::vector<std::string> ids;
    std::map<std::string, int> index;
    for (const Node& n : network.nodes()) {
        index[n.id] = static_cast<int>(ids.size());
        ids.push_back(n.id);
    }
    std::vector<std::vector<int>> adj(ids.size());
    for (const Link& l : network.links()) {
        if (!effectively_open(l, config)) continue;
        adj[index.at(l.from)].push_back(index.at(l.to));
        adj[index.at(l.to)].push_back(index.at(l.from));
    }
    std::vector<bool> seen(ids.size(), false);
    std::vector<int> stack;
    for (const Node& n : network.nodes())
        if (n.is_reservoir()) {
            stack.push_back(index.at(n.id));
            seen[index.at(n.id)] = true;
        }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    std::set<std::string> out;
    for (const Node& n : network.nodes())
        if (n.is_junction() && !seen[index.at(n.id)]) out.insert(n.id);
    return out;
}

namespace {

struct PathEnumerator {
    const WeightedGraph& g;
    std::vector<std::vector<int>> incidence; // node -> edge indices
    std::vector<bool> on_path;
    std::vector<int> edge_stack;
    int target = 0;
    double weight = 0.0;

    std::vector<std::pair<double, std::vector<int>>> paths; // (weight, edge indices)

    explicit PathEnumerator(const WeightedGraph& graph) : g(graph) {
        incidence.resize(g.node_ids.size());
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            if (g.edges[ei].u == g.edges[ei].v) continue;
            incidence[g.edges[ei].u].push_back(ei);
            incidence[g.edges[ei].v].push_back(ei);
        }
        on_path.assign(g.node_ids.size(), false);
    }

    void dfs(int u) {
        if (u == target) {
            paths.emplace_back(weight, edge_stack);
            return;
        }
        for (int ei : incidence[u]) {
            const WeightedEdge& e = g.edges[ei];
            int v = e.u == u ? e.v : e.u;
            if (on_path[v]) continue;
            on_path[v] = true;
            edge_stack.push_back(ei);
            weight += e.weight;
            dfs(v);
            weight -= e.weight;
            edge_stack.pop_back();
            on_path[v] = false;
        }
    }

    std::vector<std::pair<double, std::vector<int>>> run(int s, int t) {
        paths.clear();
        target = t;
        on_path[s] = true;
        dfs(s);
        on_path[s] = false;
        return paths;
    }
};

} // namespace

std::map<std::string, double> betweenness_oracle(const WeightedGraph& graph) {
    std::map<std::string, double> score;
    for (const WeightedEdge& e : graph.edges) score[e.id] = 0.0;
    const int n = static_cast<int>(graph.node_ids.size());
    PathEnumerator enumerator(graph);
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            auto paths = enumerator.run(s, t);
            if (paths.empty()) continue;
            double best = paths.front().first;
            for (const auto& [w, edges] : paths) best = std::min(best, w);
            std::vector<double> per_edge(graph.edges.size(), 0.0);
            double total = 0.0;
            for (const auto& [w, edges] : paths) {
                if (w != best) continue;
                total += 1.0;
                for (int ei : edges) per_edge[ei] += 1.0;
            }
            for (int ei = 0; ei < static_cast<int>(graph.edges.size()); ++ei)
                if (per_edge[ei] > 0.0) score[graph.edges[ei].id] += per_edge[ei] / total;
        }
    }
    return score;
}

BigUint binomial_factorial_oracle(int n, int k) {
    auto factorial = [](int m) {
        BigUint f(1);
        for (int i = 2; i <= m; ++i) f *= static_cast<std::uint32_t>(i);
        return f;
    };
    BigUint result = factorial(n);
    for (int i = 2; i <= k; ++i) result /= static_cast<std::uint32_t>(i);
    for (int i = 2; i <= n - k; ++i) result /= static_cast<std::uint32_t>(i);
    return result;
}

TestRng::TestRng(std::uint64_t seed) : s0_(seed ^ 0x9e3779b97f4a7c15ull), s1_(seed * 0xbf58476d1ce4e5b9ull + 1) {
    for (int i = 0; i < 8; ++i) next();
}

std::uint64_t TestRng::next() {
    std::uint64_t x = s0_;
    const std::uint64_t y = s1_;
    s0_ = y;
    x ^= x << 23;
    s1_ = x ^ y ^ (x >> 17) ^ (y >> 26);
    return s1_ + y;
}

WeightedGraph random_connected_graph(TestRng& rng, int max_nodes) {
    WeightedGraph g;
    int n = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(max_nodes - 1)));
    for (int i = 0; i < n; ++i) g.node_ids.push_back("v" + std::to_string(i));
    int edge_no = 0;
    auto add_edge = [&](int u, int v) {
        double w = 1.0 + static_cast<double>(rng.below(4)); // integer weights stay exact
        g.edges.push_back({"e" + std::to_string(edge_no++), u, v, w, true});
    };
    // random spanning tree first, then a few extra edges (parallels allowed)
    for (int i = 1; i < n; ++i) add_edge(static_cast<int>(rng.below(i)), i);
    int extra = static_cast<int>(rng.below(static_cast<std::size_t>(n + 1)));
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng.below(n));
        int v = static_cast<int>(rng.below(n));
        if (u == v) continue; // skip would-be self-loops
        add_edge(u, v);
    }
    return g;
}

} // namespace dyndma::tests
