#include "support/fixtures.hpp"

namespace dyndma::tests {

namespace {

Node junction(const std::string& id, double elevation, double demand) {
    return {id, NodeKind::junction, elevation, demand};
}

Node reservoir(const std::string& id, double head) {
    return {id, NodeKind::reservoir, head, 0.0};
}

Link pipe(const std::string& id, const std::string& from, const std::string& to,
          double length = 1000.0, double diameter = 0.3, LinkStatus status = LinkStatus::open) {
    Link l;
    l.id = id;
    l.from = from;
    l.to = to;
    l.length = length;
    l.diameter = diameter;
    l.roughness = 130.0;
    l.status = status;
    return l;
}

} // namespace

Network single_pipe_network(double demand) {
    return Network({reservoir("R", 50.0), junction("J1", 0.0, demand)},
                   {pipe("P1", "R", "J1")}, 19.0);
}

Network two_pipe_series_network() {
    return Network({reservoir("R", 50.0), junction("J1", 0.0, 0.0), junction("J2", 0.0, 0.01)},
                   {pipe("P1", "R", "J1"), pipe("P2", "J1", "J2")}, 19.0);
}

Network parallel_pipe_network() {
    return Network({reservoir("R", 50.0), junction("J1", 0.0, 0.01)},
                   {pipe("P1", "R", "J1"), pipe("P2", "R", "J1")}, 19.0);
}

Network zero_demand_network() {
    return Network({reservoir("R", 50.0), junction("J1", 0.0, 0.0), junction("J2", 5.0, 0.0)},
                   {pipe("P1", "R", "J1"), pipe("P2", "J1", "J2")}, 19.0);
}

Network lossless_network() {
    return Network({reservoir("R", 50.0), junction("J1", 0.0, 0.05), junction("J2", 0.0, 0.08)},
                   {pipe("P1", "R", "J1", 100.0, 10.0), pipe("P2", "J1", "J2", 100.0, 10.0)},
                   19.0);
}

Fixture four_dma_toy() {
    std::vector<Node> nodes;
    std::vector<Link> links;
    Partition partition;
    const char* dmas[4] = {"A", "B", "C", "D"};
    for (int d = 0; d < 4; ++d) {
        for (int i = 1; i <= 4; ++i) {
            std::string id = std::string(dmas[d]) + std::to_string(i);
            nodes.push_back(junction(id, 5.0, 0.004));
            partition.labels[id] = dmas[d];
        }
        for (int i = 1; i <= 4; ++i) {
            std::string a = std::string(dmas[d]) + std::to_string(i);
            std::string b = std::string(dmas[d]) + std::to_string(i % 4 + 1);
            links.push_back(pipe("p" + a + b, a, b, 100.0, 0.2));
        }
    }
    nodes.push_back(reservoir("R", 50.0));
    partition.labels["R"] = "A";
    links.push_back(pipe("pRA1", "R", "A1", 50.0, 0.4));
    links.push_back(pipe("bAB", "A2", "B1", 150.0, 0.25));
    links.push_back(pipe("bCD", "C2", "D1", 150.0, 0.25));
    links.push_back(pipe("bAC", "A3", "C1", 150.0, 0.25));
    links.push_back(pipe("bBD", "B4", "D2", 150.0, 0.25));
    return {Network(std::move(nodes), std::move(links), 19.0), std::move(partition)};
}

Fixture two_dma_paths() {
    std::vector<Node> nodes = {junction("x1", 0.0, 0.002), junction("x2", 0.0, 0.002),
                               junction("x3", 0.0, 0.002), junction("y1", 0.0, 0.002),
                               junction("y2", 0.0, 0.002), junction("y3", 0.0, 0.002),
                               reservoir("R", 40.0)};
    std::vector<Link> links = {pipe("x12", "x1", "x2", 100.0, 0.2),
                               pipe("x23", "x2", "x3", 150.0, 0.2),
                               pipe("y12", "y1", "y2", 120.0, 0.2),
                               pipe("y23", "y2", "y3", 80.0, 0.2),
                               pipe("bxy1", "x1", "y1", 200.0, 0.2),
                               pipe("bxy2", "x3", "y3", 250.0, 0.2),
                               pipe("pR", "R", "x2", 50.0, 0.4)};
    Partition partition;
    for (const char* id : {"x1", "x2", "x3"}) partition.labels[id] = "X";
    for (const char* id : {"y1", "y2", "y3"}) partition.labels[id] = "Y";
    partition.labels["R"] = "X";
    return {Network(std::move(nodes), std::move(links), 19.0), std::move(partition)};
}

Fixture barbell_six_dmas() {
    std::vector<Node> nodes;
    std::vector<Link> links;
    Partition partition;
    for (int d = 1; d <= 6; ++d) {
        std::string label = "D" + std::to_string(d);
        for (int i = 1; i <= 3; ++i) {
            std::string id = label + "n" + std::to_string(i);
            nodes.push_back(junction(id, 2.0, 0.003));
            partition.labels[id] = label;
        }
        links.push_back(pipe(label + "p1", label + "n1", label + "n2", 100.0, 0.2));
        links.push_back(pipe(label + "p2", label + "n2", label + "n3", 100.0, 0.2));
    }
    nodes.push_back(reservoir("R", 60.0));
    partition.labels["R"] = "D1";
    links.push_back(pipe("pR", "R", "D1n1", 50.0, 0.4));

    auto boundary = [&](const std::string& id, int a, int an, int b, int bn) {
        links.push_back(pipe(id, "D" + std::to_string(a) + "n" + std::to_string(an),
                             "D" + std::to_string(b) + "n" + std::to_string(bn), 150.0, 0.25));
    };
    boundary("b12", 1, 2, 2, 1);
    boundary("b23", 2, 3, 3, 1);
    boundary("b13", 1, 3, 3, 2);
    boundary("b45", 4, 2, 5, 1);
    boundary("b56", 5, 3, 6, 1);
    boundary("b46", 4, 3, 6, 2);
    boundary("bridge", 3, 3, 4, 1);
    return {Network(std::move(nodes), std::move(links), 19.0), std::move(partition)};
}

Fixture corridor_fixture(int n_boundary, double demand_scale) {
    std::vector<Node> nodes;
    std::vector<Link> links;
    Partition partition;
    nodes.push_back(reservoir("R", 55.0));
    partition.labels["R"] = "A";

    // DMA A: a short spine off the reservoir
    for (int i = 1; i <= n_boundary; ++i) {
        std::string id = "a" + std::to_string(i);
        nodes.push_back(junction(id, 10.0, 0.002 * demand_scale));
        partition.labels[id] = "A";
        if (i == 1)
            links.push_back(pipe("pRa1", "R", "a1", 60.0, 0.35));
        else
            links.push_back(
                pipe("pa" + std::to_string(i - 1) + std::to_string(i), "a" + std::to_string(i - 1),
                     id, 80.0, 0.3));
    }
    // DMA B mirrors it; every corridor pipe crosses between the spines
    for (int i = 1; i <= n_boundary; ++i) {
        std::string id = "b" + std::to_string(i);
        nodes.push_back(junction(id, 12.0, 0.004 * demand_scale));
        partition.labels[id] = "B";
        if (i > 1)
            links.push_back(
                pipe("pb" + std::to_string(i - 1) + std::to_string(i), "b" + std::to_string(i - 1),
                     id, 80.0, 0.25));
        links.push_back(pipe("cross" + std::to_string(i), "a" + std::to_string(i), id, 120.0,
                             0.15));
    }
    return {Network(std::move(nodes), std::move(links), 19.0), std::move(partition)};
}

} // namespace dyndma::tests
