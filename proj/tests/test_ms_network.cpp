#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dyndma/errors.hpp"
#include "dyndma/ms_network.hpp"
#include "dyndma/synthetic.hpp"
#include "support/fixtures.hpp"

using namespace dyndma;
using namespace dyndma::tests;

TEST_CASE("a single-DMA network contracts to nothing") {
    Network net = single_pipe_network();
    Partition p;
    p.labels["R"] = "ALL";
    p.labels["J1"] = "ALL";
    MsNetwork ms = build_ms_network(net, p);
    CHECK(ms.ms_nodes.empty());
    CHECK(ms.boundary_hyperlinks.empty());
    CHECK(ms.internal_hyperlinks.empty());
}

TEST_CASE("two path DMAs joined by two pipes contract to a 4-node MS network") {
    Fixture f = two_dma_paths();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    CHECK(ms.ms_nodes == std::vector<std::string>{"x1", "x3", "y1", "y3"});
    REQUIRE(ms.boundary_hyperlinks.size() == 2);
    CHECK(ms.boundary_hyperlinks[0].link_id == "bxy1");
    CHECK(ms.boundary_hyperlinks[0].weight == 200.0);
    CHECK(ms.boundary_hyperlinks[1].weight == 250.0);

    REQUIRE(ms.internal_hyperlinks.size() == 2);
    // weights are the intra-DMA path lengths, witnessed by the path pipes
    for (const auto& h : ms.internal_hyperlinks) {
        if (h.dma == "X") {
            CHECK(h.weight == 250.0); // x1-x2 (100) + x2-x3 (150)
            CHECK(h.witness_path == std::vector<std::string>{"x12", "x23"});
        } else {
            CHECK(h.weight == 200.0); // y1-y2 (120) + y2-y3 (80)
            CHECK(h.witness_path == std::vector<std::string>{"y12", "y23"});
        }
    }
}

TEST_CASE("four-DMA toy keeps only boundary nodes, fully meshed inside DMAs") {
    Fixture f = four_dma_toy();
    MsNetwork ms = build_ms_network(f.network, f.partition);
    // each DMA contributes its two boundary-pipe endpoints
    CHECK(ms.ms_nodes.size() == 8);
    CHECK(ms.boundary_hyperlinks.size() == 4);
    // each DMA has 2 boundary nodes -> one internal hyper-link apiece
    CHECK(ms.internal_hyperlinks.size() == 4);
    for (const auto& [dma, nodes] : ms.dma_index) {
        std::size_t b = nodes.size();
        std::size_t internal = 0;
        for (const auto& h : ms.internal_hyperlinks)
            if (h.dma == dma) ++internal;
        CHECK(internal == b * (b - 1) / 2); // complete graph on the DMA's boundary nodes
    }
}

TEST_CASE("every boundary node is an endpoint of a boundary link") {
    SyntheticLayout layout = make_benchmark_network();
    MsNetwork ms = build_ms_network(layout.network, layout.partition);
    std::set<std::string> endpoints;
    for (const auto& h : ms.boundary_hyperlinks) {
        endpoints.insert(h.a);
        endpoints.insert(h.b);
    }
    CHECK(endpoints == std::set<std::string>(ms.ms_nodes.begin(), ms.ms_nodes.end()));
    CHECK(ms.ms_nodes.size() <= 2 * ms.boundary_hyperlinks.size());
    // contract-then-expand: dma_index reproduces the original membership
    for (const auto& [dma, nodes] : ms.dma_index)
        for (const std::string& n : nodes) CHECK(*layout.partition.label_of(n) == dma);
}

TEST_CASE("internal hyper-link weights are realized by their witness paths") {
    SyntheticLayout layout = make_benchmark_network();
    MsNetwork ms = build_ms_network(layout.network, layout.partition);
    for (const auto& h : ms.internal_hyperlinks) {
        double total = 0.0;
        for (const std::string& link_id : h.witness_path) {
            const Link* l = layout.network.find_link(link_id);
            REQUIRE(l != nullptr);
            CHECK(*layout.partition.label_of(l->from) == h.dma);
            CHECK(*layout.partition.label_of(l->to) == h.dma);
            total += l->length;
        }
        CHECK(total == doctest::Approx(h.weight).epsilon(1e-12));
    }
}

TEST_CASE("build fails when a DMA is internally disconnected") {
    Fixture f = two_dma_paths();
    // cut DMA Y apart: y2 loses its link to y3
    std::vector<Link> links;
    for (const Link& l : f.network.links())
        if (l.id != "y23") links.push_back(l);
    Network broken(f.network.nodes(), links, 19.0);
    CHECK_THROWS_WITH_AS(build_ms_network(broken, f.partition), doctest::Contains("Y"), Error);
}

TEST_CASE("balance index is zero for equal DMAs and matches the formula") {
    Fixture f = four_dma_toy(); // 4 DMAs x 4 junctions
    CHECK(balance_index(f.network, f.partition) == 0.0);

    // sizes {2,4}: population std dev is 1.0
    Network net({{"R", NodeKind::reservoir, 10.0, 0.0},
                 {"a1", NodeKind::junction, 0.0, 0.0},
                 {"a2", NodeKind::junction, 0.0, 0.0},
                 {"b1", NodeKind::junction, 0.0, 0.0},
                 {"b2", NodeKind::junction, 0.0, 0.0},
                 {"b3", NodeKind::junction, 0.0, 0.0},
                 {"b4", NodeKind::junction, 0.0, 0.0}},
                {{"p1", "a1", "a2", 1.0, 0.1, 100.0, LinkStatus::open, Device::none},
                 {"p2", "b1", "b2", 1.0, 0.1, 100.0, LinkStatus::open, Device::none},
                 {"p3", "b2", "b3", 1.0, 0.1, 100.0, LinkStatus::open, Device::none},
                 {"p4", "b3", "b4", 1.0, 0.1, 100.0, LinkStatus::open, Device::none},
                 {"p5", "a2", "b1", 1.0, 0.1, 100.0, LinkStatus::open, Device::none},
                 {"pr", "R", "a1", 1.0, 0.1, 100.0, LinkStatus::open, Device::none}},
                19.0);
    Partition p;
    p.labels = {{"R", "A"}, {"a1", "A"}, {"a2", "A"},
                {"b1", "B"}, {"b2", "B"}, {"b3", "B"}, {"b4", "B"}};
    CHECK(balance_index(net, p) == doctest::Approx(1.0).epsilon(1e-12)); // reservoir excluded
}

TEST_CASE("optimal cluster count is calibrated to 184 -> 4") {
    CHECK(optimal_cluster_count(184) == 4);
    CHECK(optimal_cluster_count(2) == 2);   // floor of the range
    // direct evaluation of round(k n^0.28) with k = 4 / 184^0.28
    double k = 4.0 / std::pow(184.0, 0.28);
    CHECK(optimal_cluster_count(10000) == static_cast<int>(std::lround(k * std::pow(10000.0, 0.28))));
    CHECK(optimal_cluster_count(10000) == 12);
    CHECK_THROWS_AS(optimal_cluster_count(1), Error);
}

TEST_CASE("metric rows bundle counts, balance, pressures and resilience") {
    Fixture f = four_dma_toy();
    HydraulicState state = solve(f.network);
    REQUIRE(state.converged);

    DividingConfig config;
    auto boundary = boundary_links(f.network, f.partition);
    for (const std::string& id : boundary) config.assignment[id] = Device::flow_meter;

    MetricsRow row = partition_metrics(f.network, &f.partition, &config, state, "toy", 1.0);
    CHECK(row.layout == "toy");
    CHECK(*row.n_ec == 4);
    CHECK(*row.n_fm == 4);
    CHECK(*row.n_gv == 0); // N_gv = N_ec - N_fm
    CHECK(*row.balance == 0.0);
    CHECK(row.resilience > 0.0);

    MetricsRow bare = partition_metrics(f.network, nullptr, nullptr, state, "un-partitioned", 1.0);
    CHECK(!bare.n_ec);
    CHECK(!bare.n_fm);
    CHECK(!bare.n_gv);
    CHECK(!bare.balance);
}
