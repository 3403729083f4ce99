#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dyndma/aggregation.hpp"
#include "dyndma/errors.hpp"
#include "dyndma/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace dyndma;
using namespace dyndma::tests;

namespace {

WeightedGraph path3() {
    WeightedGraph g;
    g.node_ids = {"a", "b", "c"};
    g.edges = {{"ab", 0, 1, 1.0, true}, {"bc", 1, 2, 1.0, true}};
    return g;
}

} // namespace

TEST_CASE("path a-b-c: each edge lies on two of the three pairs") {
    auto scores = edge_betweenness(path3());
    CHECK(scores.at("ab") == 2.0); // {a,b} and {a,c}
    CHECK(scores.at("bc") == 2.0);
}

TEST_CASE("a single edge has betweenness one") {
    WeightedGraph g;
    g.node_ids = {"a", "b"};
    g.edges = {{"ab", 0, 1, 3.5, true}};
    CHECK(edge_betweenness(g).at("ab") == 1.0);
}

TEST_CASE("unit-weight 4-cycle: opposite pairs split over two tied paths") {
    WeightedGraph g;
    g.node_ids = {"a", "b", "c", "d"};
    g.edges = {{"ab", 0, 1, 1.0, true},
               {"bc", 1, 2, 1.0, true},
               {"cd", 2, 3, 1.0, true},
               {"da", 3, 0, 1.0, true}};
    // per edge: its own endpoint pair (1) plus a half share from each of the
    // two opposite pairs, whose two tied paths it serves once each
    auto scores = edge_betweenness(g);
    auto expected = betweenness_oracle(g);
    for (const auto& [id, s] : scores) {
        CHECK(s == 2.0);
        CHECK(s == expected.at(id));
    }
}

TEST_CASE("weights reroute shortest paths") {
    // triangle with one heavy side: light sides carry the heavy pair too
    WeightedGraph g;
    g.node_ids = {"a", "b", "c"};
    g.edges = {{"ab", 0, 1, 1.0, true}, {"bc", 1, 2, 1.0, true}, {"ac", 0, 2, 5.0, true}};
    auto scores = edge_betweenness(g);
    CHECK(scores.at("ab") == 2.0);
    CHECK(scores.at("bc") == 2.0);
    CHECK(scores.at("ac") == 0.0);
}

TEST_CASE("parallel edges split their pair's unit") {
    WeightedGraph g;
    g.node_ids = {"a", "b"};
    g.edges = {{"e1", 0, 1, 2.0, true}, {"e2", 0, 1, 2.0, true}};
    auto scores = edge_betweenness(g);
    CHECK(scores.at("e1") == 0.5);
    CHECK(scores.at("e2") == 0.5);
}

TEST_CASE("non-positive weights are rejected") {
    WeightedGraph g;
    g.node_ids = {"a", "b"};
    g.edges = {{"e1", 0, 1, 0.0, true}};
    CHECK_THROWS_AS(edge_betweenness(g), Error);
}

TEST_CASE("disconnected graphs are accepted; cross-component pairs contribute nothing") {
    WeightedGraph g;
    g.node_ids = {"a", "b", "c", "d"};
    g.edges = {{"ab", 0, 1, 1.0, true}, {"cd", 2, 3, 1.0, true}};
    auto scores = edge_betweenness(g);
    CHECK(scores.at("ab") == 1.0);
    CHECK(scores.at("cd") == 1.0);
    CHECK(component_count(g) == 2);
}

TEST_CASE("betweenness matches the exhaustive oracle on random small graphs") {
    TestRng rng(20260810);
    int connected_seen = 0;
    for (int trial = 0; trial < 250; ++trial) {
        WeightedGraph g = random_connected_graph(rng, 8);
        if (component_count(g) == 1) ++connected_seen;
        auto got = edge_betweenness(g);
        auto expected = betweenness_oracle(g);
        REQUIRE(got.size() == expected.size());
        for (const auto& [id, score] : expected) CHECK(got.at(id) == score);
    }
    CHECK(connected_seen >= 200);
}

TEST_CASE("aggregating the barbell to two districts cuts exactly the bridge") {
    Fixture f = barbell_six_dmas();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    AggregationResult result = girvan_newman_aggregate(f.network, f.partition, ms, 2);

    REQUIRE(result.removed_edges_log.size() == 1);
    CHECK(result.removed_edges_log[0].first == "bridge");

    // the two triangles become the two super-clusters
    CHECK(result.super_labels.at("D1") == result.super_labels.at("D2"));
    CHECK(result.super_labels.at("D2") == result.super_labels.at("D3"));
    CHECK(result.super_labels.at("D4") == result.super_labels.at("D5"));
    CHECK(result.super_labels.at("D5") == result.super_labels.at("D6"));
    CHECK(result.super_labels.at("D1") != result.super_labels.at("D4"));

    CHECK(result.new_boundary_links == std::set<std::string>{"bridge"});
}

TEST_CASE("identity aggregation keeps every boundary link") {
    Fixture f = barbell_six_dmas();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    AggregationResult result = girvan_newman_aggregate(f.network, f.partition, ms, 6);
    CHECK(result.new_boundary_links == boundary_links(f.network, f.partition));
    CHECK(result.new_partition.cluster_count() == 6);
    // every DMA keeps its own super label
    std::set<std::string> supers;
    for (const auto& [dma, s] : result.super_labels) supers.insert(s);
    CHECK(supers.size() == 6);
}

TEST_CASE("aggregating to one district clears the boundary set") {
    Fixture f = barbell_six_dmas();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    AggregationResult result = girvan_newman_aggregate(f.network, f.partition, ms, 1);
    CHECK(result.new_boundary_links.empty());
    CHECK(result.new_partition.cluster_count() == 1);
    CHECK(result.removed_edges_log.empty());
}

TEST_CASE("aggregation rejects empty MS networks and bad targets") {
    Network net = single_pipe_network();
    Partition p;
    p.labels["R"] = "ALL";
    p.labels["J1"] = "ALL";
    MsNetwork ms = build_ms_network(net, p);
    CHECK_THROWS_AS(girvan_newman_aggregate(net, p, ms, 1), Error);

    Fixture f = barbell_six_dmas();
    MsNetwork ms6 = build_ms_network(f.network, f.partition);
    CHECK_THROWS_AS(girvan_newman_aggregate(f.network, f.partition, ms6, 0), Error);
    CHECK_THROWS_AS(girvan_newman_aggregate(f.network, f.partition, ms6, 7), Error);
}

TEST_CASE("no former DMA is split, for every reachable target count") {
    SyntheticLayout layout = make_benchmark_network();
    MsNetwork ms = build_ms_network(layout.network, layout.partition);
    std::set<std::string> old_boundary = boundary_links(layout.network, layout.partition);
    for (int c = 1; c <= 9; ++c) {
        AggregationResult result =
            girvan_newman_aggregate(layout.network, layout.partition, ms, c);
        CHECK(result.new_partition.cluster_count() == c);
        // no split: all nodes of one DMA share a super label
        std::map<std::string, std::string> seen;
        for (const auto& [node, label] : layout.partition.labels) {
            const std::string& super_label = result.new_partition.labels.at(node);
            auto it = seen.find(label);
            if (it == seen.end())
                seen[label] = super_label;
            else
                CHECK(it->second == super_label);
        }
        // subset invariant
        for (const std::string& id : result.new_boundary_links)
            CHECK(old_boundary.count(id) == 1);
    }
}

TEST_CASE("component count never decreases along the removal sequence") {
    Fixture f = barbell_six_dmas();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    WeightedGraph g = ms_to_graph(ms);
    AggregationResult result = girvan_newman_aggregate(f.network, f.partition, ms, 4);
    int prev = component_count(g);
    for (const auto& [edge_id, betweenness] : result.removed_edges_log) {
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            if (g.edges[i].id == edge_id) {
                g.edges.erase(g.edges.begin() + i);
                break;
            }
        int now = component_count(g);
        CHECK(now >= prev);
        prev = now;
    }
    CHECK(prev == 4);
}

TEST_CASE("aggregation is deterministic across runs") {
    SyntheticLayout layout = make_benchmark_network();
    MsNetwork ms = build_ms_network(layout.network, layout.partition);
    AggregationResult a = girvan_newman_aggregate(layout.network, layout.partition, ms, 4);
    AggregationResult b = girvan_newman_aggregate(layout.network, layout.partition, ms, 4);
    CHECK(a.new_partition.labels == b.new_partition.labels);
    CHECK(a.new_boundary_links == b.new_boundary_links);
    CHECK(a.removed_edges_log == b.removed_edges_log);
}

TEST_CASE("internal hyper-links are never removed") {
    SyntheticLayout layout = make_benchmark_network();
    MsNetwork ms = build_ms_network(layout.network, layout.partition);
    std::set<std::string> boundary_ids;
    for (const auto& h : ms.boundary_hyperlinks) boundary_ids.insert(h.link_id);
    AggregationResult result = girvan_newman_aggregate(layout.network, layout.partition, ms, 4);
    for (const auto& [edge_id, betweenness] : result.removed_edges_log)
        CHECK(boundary_ids.count(edge_id) == 1);
}
