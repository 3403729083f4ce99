#ifndef DYNDMA_INP_IO_HPP
#define DYNDMA_INP_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "dyndma/dss.hpp"
#include "dyndma/model.hpp"
#include "dyndma/ms_network.hpp"

namespace dyndma {

// Tokenized INP file: section order and unknown sections are preserved so the
// document layer can round-trip byte content it does not interpret.
struct InpRow {
    int line = 0;
    std::vector<std::string> tokens;
};

struct InpSection {
    std::string name; // canonical upper-case, without brackets
    std::vector<InpRow> rows;
};

struct InpDocument {
    std::vector<InpSection> sections;

    const InpSection* find(const std::string& name) const;
};

// Lossless tokenization: strips ";" comments, splits on whitespace, accepts
// any [SECTION] header. Throws ParseError on data before the first header.
InpDocument parse_inp_document(const std::string& text);
std::string emit_inp_document(const InpDocument& document);

// EPANET-INP-style subset -> Network. Demands are read in L/s and diameters
// in mm; the returned network is SI (m3/s, m). Unsupported modelling sections
// ([PUMPS], [TANKS], ...) and unknown sections are rejected with the line.
Network parse_network(const std::string& text);
Network network_from_document(const InpDocument& document);
std::string emit_network(const Network& network);

// "node_id,dma" CSV.
Partition parse_partition(const std::string& text);
std::string emit_partition(const Partition& partition);

// Deterministic report JSON: stable key order, numbers reduced to 6
// significant digits.
std::string emit_report(const DssReport& report);
DssReport parse_report(const std::string& text);

// Installed-devices JSON: {"flow_meters": [...], "gate_valves": [...]}.
InstalledDevices parse_installed(const std::string& text);
std::string emit_installed(const InstalledDevices& installed);

// Device-assignment JSON: {link_id: "flow_meter" | "gate_valve"}.
DividingConfig parse_config(const std::string& text);
std::string emit_config(const DividingConfig& config);

// Graphviz DOT renderings. Nodes are filled by DMA color; boundary links are
// bold, MS-internal hyper-links dashed grey.
std::string emit_graph(const Network& network, const Partition* partition = nullptr);
std::string emit_graph(const Network& network, const MsNetwork& ms);

// Nearest double representable with 6 significant decimal digits.
double round_sig6(double x);

} // namespace dyndma

#endif
