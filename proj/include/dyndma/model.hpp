#ifndef DYNDMA_MODEL_HPP
#define DYNDMA_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dyndma {

enum class NodeKind { junction, reservoir };
enum class LinkStatus { open, closed };
enum class Device { none, flow_meter, gate_valve };

std::string to_string(Device d);
std::optional<Device> device_from_string(const std::string& s);

// A junction (ground elevation + demand) or a reservoir (fixed total head).
// All quantities are SI: meters and m3/s.
struct Node {
    std::string id;
    NodeKind kind = NodeKind::junction;
    double elevation = 0.0;   // junction: ground elevation; reservoir: fixed total head [m a.s.l.]
    double base_demand = 0.0; // junction only [m3/s], >= 0

    bool is_junction() const { return kind == NodeKind::junction; }
    bool is_reservoir() const { return kind == NodeKind::reservoir; }
};

// A pipe. Roughness is the Hazen-Williams C coefficient.
struct Link {
    std::string id;
    std::string from;
    std::string to;
    double length = 0.0;    // m
    double diameter = 0.0;  // m
    double roughness = 0.0; // Hazen-Williams C
    LinkStatus status = LinkStatus::open;
    Device device = Device::none;
};

// Assignment of a device to every boundary link of one partition layout.
// flow_meter keeps the pipe open, gate_valve closes it.
struct DividingConfig {
    std::map<std::string, Device> assignment; // boundary link id -> flow_meter | gate_valve

    std::optional<Device> device_for(const std::string& link_id) const;
    int flow_meter_count() const;
    int gate_valve_count() const;
};

// Immutable value object holding the whole water network. Construction never
// validates; invariant violations are reported by validate() as data.
class Network {
public:
    Network() = default;
    Network(std::vector<Node> nodes, std::vector<Link> links, double h_star);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    double design_pressure() const { return h_star_; } // h* [m]

    const Node* find_node(const std::string& id) const;
    const Link* find_link(const std::string& id) const;

    std::size_t junction_count() const;
    std::size_t reservoir_count() const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    double h_star_ = 0.0;
    std::map<std::string, std::size_t> node_index_; // first occurrence wins
    std::map<std::string, std::size_t> link_index_;
};

// Assignment of every node to a DMA label. Reservoirs may be labeled with the
// reserved "source" tag, meaning "attach me to the DMA of my nearest junction"
// (resolved by complete_partition).
struct Partition {
    std::map<std::string, std::string> labels; // node id -> DMA label

    int cluster_count() const; // number of distinct DMA labels
    std::vector<std::string> dma_labels() const; // sorted distinct labels
    const std::string* label_of(const std::string& node_id) const;
};

inline constexpr const char* kSourceLabel = "source";

struct Violation {
    std::string entity; // offending node/link/label id
    std::string rule;   // human-readable description of the broken rule
};

// Structural invariant checks; empty result means the network is well formed.
std::vector<Violation> validate(const Network& network);

// Junctions unreachable from every reservoir, walking only links that are
// effectively open (closed links and gate_valve assignments are absent).
// Empty result means connected. Sorted by junction id.
std::vector<std::string> check_connectivity(const Network& network,
                                            const DividingConfig* config = nullptr);

// Links whose endpoints carry different DMA labels. Throws Error on a node
// with no label. Cardinality is N_ec.
std::set<std::string> boundary_links(const Network& network, const Partition& partition);

// Copy of the network with every junction demand multiplied by factor.
Network scale_demands(const Network& network, double factor);

// Fills in missing or "source"-labeled reservoirs with the DMA of their
// nearest junction by hop count (ties broken by smallest junction id).
Partition complete_partition(const Network& network, Partition partition);

// Partition-level invariant checks against a network: full coverage, no
// unknown nodes, each DMA connected. Empty result means valid.
std::vector<Violation> validate_partition(const Network& network, const Partition& partition);

// True when the link is effectively open under the config overlay: a config
// entry overrides the stored status (flow_meter -> open, gate_valve -> closed).
bool effectively_open(const Link& link, const DividingConfig* config);

// Copy of the network with the given links forced open and their devices cleared.
Network open_links(const Network& network, const std::set<std::string>& link_ids);

} // namespace dyndma

#endif
