#include "dyndma/model.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "dyndma/errors.hpp"

namespace dyndma {

std::string to_string(Device d) {
    switch (d) {
    case Device::none: return "none";
    case Device::flow_meter: return "flow_meter";
    case Device::gate_valve: return "gate_valve";
    }
    return "none";
}

std::optional<Device> device_from_string(const std::string& s) {
    if (s == "none") return Device::none;
    if (s == "flow_meter") return Device::flow_meter;
    if (s == "gate_valve") return Device::gate_valve;
    return std::nullopt;
}

std::optional<Device> DividingConfig::device_for(const std::string& link_id) const {
    auto it = assignment.find(link_id);
    if (it == assignment.end()) return std::nullopt;
    return it->second;
}

int DividingConfig::flow_meter_count() const {
    int n = 0;
    for (const auto& [id, d] : assignment)
        if (d == Device::flow_meter) ++n;
    return n;
}

int DividingConfig::gate_valve_count() const {
    int n = 0;
    for (const auto& [id, d] : assignment)
        if (d == Device::gate_valve) ++n;
    return n;
}

Network::Network(std::vector<Node> nodes, std::vector<Link> links, double h_star)
    : nodes_(std::move(nodes)), links_(std::move(links)), h_star_(h_star) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        node_index_.emplace(nodes_[i].id, i);
    for (std::size_t i = 0; i < links_.size(); ++i)
        link_index_.emplace(links_[i].id, i);
}

const Node* Network::find_node(const std::string& id) const {
    auto it = node_index_.find(id);
    return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const Link* Network::find_link(const std::string& id) const {
    auto it = link_index_.find(id);
    return it == link_index_.end() ? nullptr : &links_[it->second];
}

std::size_t Network::junction_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_junction(); }));
}

std::size_t Network::reservoir_count() const {
    return nodes_.size() - junction_count();
}

int Partition::cluster_count() const {
    return static_cast<int>(dma_labels().size());
}

std::vector<std::string> Partition::dma_labels() const {
    std::set<std::string> distinct;
    for (const auto& [node, label] : labels)
        if (label != kSourceLabel) distinct.insert(label);
    return {distinct.begin(), distinct.end()};
}

const std::string* Partition::label_of(const std::string& node_id) const {
    auto it = labels.find(node_id);
    return it == labels.end() ? nullptr : &it->second;
}

std::vector<Violation> validate(const Network& network) {
    std::vector<Violation> out;
    std::set<std::string> seen_nodes;
    for (const Node& n : network.nodes()) {
        if (!seen_nodes.insert(n.id).second)
            out.push_back({n.id, "duplicate node id"});
        if (n.is_reservoir() && n.base_demand != 0.0)
            out.push_back({n.id, "reservoir carries a demand"});
        if (n.is_junction() && n.base_demand < 0.0)
            out.push_back({n.id, "junction base demand is negative"});
    }

    std::set<std::string> seen_links;
    for (const Link& l : network.links()) {
        if (!seen_links.insert(l.id).second)
            out.push_back({l.id, "duplicate link id"});
        if (seen_nodes.count(l.from) == 0)
            out.push_back({l.id, "from-node '" + l.from + "' does not exist"});
        if (seen_nodes.count(l.to) == 0)
            out.push_back({l.id, "to-node '" + l.to + "' does not exist"});
        if (!(l.length > 0.0))
            out.push_back({l.id, "length must be positive"});
        if (!(l.diameter > 0.0))
            out.push_back({l.id, "diameter must be positive"});
        if (!(l.roughness > 0.0))
            out.push_back({l.id, "roughness must be positive"});
        if (l.device == Device::gate_valve && l.status != LinkStatus::closed)
            out.push_back({l.id, "gate valve on an open pipe"});
        if (l.device == Device::flow_meter && l.status != LinkStatus::open)
            out.push_back({l.id, "flow meter on a closed pipe"});
    }

    if (network.reservoir_count() == 0)
        out.push_back({"network", "no reservoir present"});
    return out;
}

bool effectively_open(const Link& link, const DividingConfig* config) {
    if (config) {
        if (auto d = config->device_for(link.id)) {
            return *d != Device::gate_valve;
        }
    }
    return link.status == LinkStatus::open;
}

std::vector<std::string> check_connectivity(const Network& network, const DividingConfig* config) {
    // adjacency over effectively-open links
    std::map<std::string, std::vector<const Link*>> adj;
    for (const Link& l : network.links()) {
        if (!effectively_open(l, config)) continue;
        adj[l.from].push_back(&l);
        adj[l.to].push_back(&l);
    }

    std::set<std::string> reached;
    std::deque<std::string> frontier;
    for (const Node& n : network.nodes()) {
        if (n.is_reservoir() && reached.insert(n.id).second)
            frontier.push_back(n.id);
    }
    while (!frontier.empty()) {
        std::string cur = frontier.front();
        frontier.pop_front();
        auto it = adj.find(cur);
        if (it == adj.end()) continue;
        for (const Link* l : it->second) {
            const std::string& other = (l->from == cur) ? l->to : l->from;
            if (reached.insert(other).second) frontier.push_back(other);
        }
    }

    std::vector<std::string> stranded;
    for (const Node& n : network.nodes())
        if (n.is_junction() && reached.count(n.id) == 0) stranded.push_back(n.id);
    std::sort(stranded.begin(), stranded.end());
    return stranded;
}

std::set<std::string> boundary_links(const Network& network, const Partition& partition) {
    std::set<std::string> out;
    for (const Link& l : network.links()) {
        const std::string* la = partition.label_of(l.from);
        const std::string* lb = partition.label_of(l.to);
        if (!la) throw Error("boundary_links: node '" + l.from + "' has no DMA label");
        if (!lb) throw Error("boundary_links: node '" + l.to + "' has no DMA label");
        if (*la != *lb) out.insert(l.id);
    }
    return out;
}

Network scale_demands(const Network& network, double factor) {
    if (!(factor > 0.0)) throw Error("scale_demands: factor must be positive");
    std::vector<Node> nodes = network.nodes();
    for (Node& n : nodes)
        if (n.is_junction()) n.base_demand *= factor;
    return Network(std::move(nodes), network.links(), network.design_pressure());
}

Partition complete_partition(const Network& network, Partition partition) {
    // hop-count BFS over all links, ignoring status: the assignment is structural
    std::map<std::string, std::vector<std::string>> adj;
    for (const Link& l : network.links()) {
        adj[l.from].push_back(l.to);
        adj[l.to].push_back(l.from);
    }
    for (auto& [id, neighbors] : adj)
        std::sort(neighbors.begin(), neighbors.end());

    for (const Node& n : network.nodes()) {
        if (!n.is_reservoir()) continue;
        const std::string* lab = partition.label_of(n.id);
        if (lab && *lab != kSourceLabel) continue;

        std::set<std::string> visited{n.id};
        std::deque<std::string> frontier{n.id};
        std::string assigned;
        while (!frontier.empty() && assigned.empty()) {
            // expand one BFS layer; the first layer containing a labeled
            // junction decides, smallest id first
            std::deque<std::string> next;
            for (const std::string& cur : frontier) {
                for (const std::string& nb : adj[cur]) {
                    if (!visited.insert(nb).second) continue;
                    const Node* node = network.find_node(nb);
                    if (node && node->is_junction()) {
                        if (const std::string* l = partition.label_of(nb)) {
                            assigned = *l;
                            break;
                        }
                    }
                    next.push_back(nb);
                }
                if (!assigned.empty()) break;
            }
            frontier = std::move(next);
        }
        if (assigned.empty())
            throw Error("complete_partition: reservoir '" + n.id +
                        "' has no labeled junction reachable from it");
        partition.labels[n.id] = assigned;
    }
    return partition;
}

std::vector<Violation> validate_partition(const Network& network, const Partition& partition) {
    std::vector<Violation> out;
    for (const Node& n : network.nodes()) {
        const std::string* lab = partition.label_of(n.id);
        if (!lab)
            out.push_back({n.id, "node has no DMA label"});
        else if (*lab == kSourceLabel && !n.is_reservoir())
            out.push_back({n.id, "reserved 'source' label on a junction"});
    }
    for (const auto& [node_id, label] : partition.labels) {
        if (!network.find_node(node_id))
            out.push_back({node_id, "labeled node does not exist in the network"});
    }

    // each DMA must induce a connected subgraph (links with both endpoints inside)
    std::map<std::string, std::vector<std::string>> members;
    for (const auto& [node_id, label] : partition.labels)
        if (label != kSourceLabel && network.find_node(node_id))
            members[label].push_back(node_id);

    std::map<std::string, std::vector<const Link*>> adj;
    for (const Link& l : network.links()) {
        const std::string* la = partition.label_of(l.from);
        const std::string* lb = partition.label_of(l.to);
        if (la && lb && *la == *lb) {
            adj[l.from].push_back(&l);
            adj[l.to].push_back(&l);
        }
    }
    for (const auto& [label, ids] : members) {
        if (ids.empty()) continue;
        std::set<std::string> reached{ids.front()};
        std::deque<std::string> frontier{ids.front()};
        while (!frontier.empty()) {
            std::string cur = frontier.front();
            frontier.pop_front();
            auto it = adj.find(cur);
            if (it == adj.end()) continue;
            for (const Link* l : it->second) {
                const std::string& other = (l->from == cur) ? l->to : l->from;
                if (reached.insert(other).second) frontier.push_back(other);
            }
        }
        for (const std::string& id : ids)
            if (reached.count(id) == 0) {
                out.push_back({label, "DMA is not a connected subgraph (node '" + id +
                                          "' unreachable inside it)"});
                break;
            }
    }
    return out;
}

Network open_links(const Network& network, const std::set<std::string>& link_ids) {
    std::vector<Link> links = network.links();
    for (Link& l : links) {
        if (link_ids.count(l.id)) {
            l.status = LinkStatus::open;
            l.device = Device::none;
        }
    }
    return Network(network.nodes(), std::move(links), network.design_pressure());
}

} // namespace dyndma
