#include "dyndma/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dyndma {

namespace {

std::string pad3(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", n);
    return buf;
}

} // namespace

SyntheticLayout make_benchmark_network() {
    // district sizes sum to 182; slight imbalance gives a nonzero I_b
    const std::array<int, 9> sizes = {18, 19, 20, 20, 20, 20, 21, 22, 22};
    std::array<int, 9> base{};
    for (int d = 1; d < 9; ++d) base[d] = base[d - 1] + sizes[d - 1];

    // distance of each district from its nearest reservoir corner, in grid hops
    const std::array<int, 9> tier = {0, 1, 2, 1, 2, 1, 2, 1, 0};
    const std::array<double, 3> tier_elevation = {58.0, 70.0, 82.0};

    std::vector<Node> nodes;
    Partition partition;

    // demand weights cycle through a fixed pattern; total sits near 110 L/s
    double weight_sum = 0.0;
    std::vector<double> weights;
    for (int d = 0; d < 9; ++d)
        for (int i = 0; i < sizes[d]; ++i) {
            double w = 0.5 + ((i * 7 + d * 13) % 11) / 10.0;
            weights.push_back(w);
            weight_sum += w;
        }
    const double total_demand_ls = 110.2;

    int g = 0;
    for (int d = 0; d < 9; ++d) {
        for (int i = 0; i < sizes[d]; ++i, ++g) {
            Node n;
            n.id = "J" + pad3(g + 1);
            n.kind = NodeKind::junction;
            n.elevation = tier_elevation[tier[d]] + ((i * 3 + d) % 6);
            n.base_demand = total_demand_ls * weights[g] / weight_sum / 1000.0;
            nodes.push_back(n);
            partition.labels[n.id] = "DMA" + std::to_string(d + 1);
        }
    }
    nodes.push_back({"R1", NodeKind::reservoir, 110.0, 0.0});
    nodes.push_back({"R2", NodeKind::reservoir, 110.0, 0.0});
    partition.labels["R1"] = "DMA1";
    partition.labels["R2"] = "DMA9";

    std::vector<Link> links;
    int pipe_no = 0;
    auto add_pipe = [&](const std::string& from, const std::string& to, double length,
                        double diameter_mm, LinkStatus status) {
        Link l;
        l.id = "P" + pad3(++pipe_no);
        l.from = from;
        l.to = to;
        l.length = length;
        l.diameter = diameter_mm / 1000.0;
        l.roughness = 130.0;
        l.status = status;
        links.push_back(l);
    };
    auto jid = [&](int d, int i) { return "J" + pad3(base[d] + i + 1); };

    // district internals: a spine path plus a few chords
    const std::array<int, 9> extra = {9, 9, 8, 8, 8, 8, 8, 8, 8};
    for (int d = 0; d < 9; ++d) {
        for (int i = 0; i + 1 < sizes[d]; ++i)
            add_pipe(jid(d, i), jid(d, i + 1), 100.0, 125.0, LinkStatus::open);
        std::set<std::pair<int, int>> used;
        int added = 0;
        for (int stride : {5, 7, 3, 9}) {
            for (int start = 0; start + stride < sizes[d] && added < extra[d]; start += 2) {
                if (!used.insert({start, start + stride}).second) continue;
                add_pipe(jid(d, start), jid(d, start + stride), 140.0, 100.0, LinkStatus::open);
                ++added;
            }
            if (added >= extra[d]) break;
        }
    }

    // boundary pipes over the 3x3 district grid; 33 in total. The first pipe
    // of every adjacent pair (plus one doubled pair) stays open as the current
    // flow-meter set; the other 20 are the closed gate-valve set.
    const std::array<std::pair<int, int>, 12> pairs = {{{0, 1},
                                                        {1, 2},
                                                        {3, 4},
                                                        {4, 5},
                                                        {6, 7},
                                                        {7, 8},
                                                        {0, 3},
                                                        {1, 4},
                                                        {2, 5},
                                                        {3, 6},
                                                        {4, 7},
                                                        {5, 8}}};
    for (int p = 0; p < 12; ++p) {
        auto [a, b] = pairs[p];
        int copies = p < 9 ? 3 : 2;
        for (int k = 0; k < copies; ++k) {
            bool open = k == 0 || (p == 0 && k == 1);
            add_pipe(jid(a, (7 * k + 3 * p) % sizes[a]), jid(b, (5 * k + 2 * p + 1) % sizes[b]),
                     180.0, 150.0, open ? LinkStatus::open : LinkStatus::closed);
        }
    }

    // reservoir trunks into the two corner districts
    add_pipe("R1", jid(0, 0), 50.0, 400.0, LinkStatus::open);
    add_pipe("R2", jid(8, 0), 50.0, 400.0, LinkStatus::open);

    SyntheticLayout out;
    out.network = Network(std::move(nodes), std::move(links), 19.0);
    out.partition = std::move(partition);
    return out;
}

} // namespace dyndma
