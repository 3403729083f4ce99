#include "dyndma/inp_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dyndma/errors.hpp"

namespace dyndma {

using json = nlohmann::ordered_json;

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const InpRow& row, std::size_t index, const char* field) {
    const std::string& tok = row.tokens[index];
    char* end = nullptr;
    double value = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        throw ParseError(row.line, std::string("non-numeric ") + field + " '" + tok + "'");
    return value;
}

void expect_tokens(const InpRow& row, std::size_t min_count, std::size_t max_count,
                   const char* what) {
    if (row.tokens.size() < min_count)
        throw ParseError(row.line, std::string(what) + ": expected at least " +
                                       std::to_string(min_count) + " fields, got " +
                                       std::to_string(row.tokens.size()));
    if (row.tokens.size() > max_count)
        throw ParseError(row.line, std::string(what) + ": unexpected token '" +
                                       row.tokens[max_count] + "'");
}

// Shortest decimal string for x/scale such that parsing it and dividing by
// scale recovers x exactly; keeps emitted files round-trip safe.
std::string emit_scaled(double x, double scale) {
    double shown = x * scale;
    char buf[64];
    for (int precision : {6, 9, 12, 15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, shown);
        double back = std::strtod(buf, nullptr);
        if (back / scale == x) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", shown);
    return buf;
}

std::string emit_plain(double x) { return emit_scaled(x, 1.0); }

// Hydraulics-affecting EPANET sections this subset does not model.
const std::set<std::string>& unsupported_sections() {
    static const std::set<std::string> s = {
        "PUMPS",    "TANKS",   "VALVES",  "DEMANDS",   "PATTERNS", "CURVES",
        "CONTROLS", "RULES",   "ENERGY",  "EMITTERS",  "QUALITY",  "SOURCES",
        "REACTIONS", "MIXING", "STATUS",  "DEMANDCATEGORIES"};
    return s;
}

// Cosmetic sections carried through without interpretation.
const std::set<std::string>& ignorable_sections() {
    static const std::set<std::string> s = {"TITLE",  "COORDINATES", "VERTICES", "LABELS",
                                            "BACKDROP", "TAGS",      "REPORT",   "TIMES",
                                            "END"};
    return s;
}

} // namespace

const InpSection* InpDocument::find(const std::string& name) const {
    for (const InpSection& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

InpDocument parse_inp_document(const std::string& text) {
    InpDocument doc;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    InpSection* current = nullptr;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto pos = line.find(';'); pos != std::string::npos) line.resize(pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            auto close = line.find(']');
            if (close == std::string::npos)
                throw ParseError(line_no, "unterminated section header '" + line + "'");
            std::string name = upper(trim(line.substr(1, close - 1)));
            if (name.empty()) throw ParseError(line_no, "empty section header");
            doc.sections.push_back({name, {}});
            current = &doc.sections.back();
            continue;
        }
        if (!current)
            throw ParseError(line_no, "data before the first section header: '" + line + "'");
        InpRow row;
        row.line = line_no;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) row.tokens.push_back(tok);
        current->rows.push_back(std::move(row));
    }
    return doc;
}

std::string emit_inp_document(const InpDocument& document) {
    std::ostringstream out;
    for (const InpSection& s : document.sections) {
        out << '[' << s.name << "]\n";
        for (const InpRow& row : s.rows) {
            for (std::size_t i = 0; i < row.tokens.size(); ++i)
                out << (i ? "\t" : "") << row.tokens[i];
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

Network network_from_document(const InpDocument& doc) {
    for (const InpSection& s : doc.sections) {
        if (unsupported_sections().count(s.name)) {
            int line = s.rows.empty() ? 0 : s.rows.front().line - 1;
            throw ParseError(line, "section [" + s.name +
                                       "] is not supported by this subset; the model would be "
                                       "silently truncated");
        }
        if (s.name != "JUNCTIONS" && s.name != "RESERVOIRS" && s.name != "PIPES" &&
            s.name != "OPTIONS" && s.name != "DESIGN" && !ignorable_sections().count(s.name)) {
            int line = s.rows.empty() ? 0 : s.rows.front().line - 1;
            throw ParseError(line, "unknown section [" + s.name + "]");
        }
    }
    for (const char* required : {"JUNCTIONS", "RESERVOIRS", "PIPES"})
        if (!doc.find(required))
            throw ParseError(0, std::string("missing required section [") + required + "]");

    std::vector<Node> nodes;
    std::vector<Link> links;
    double h_star = 19.0; // default design pressure head [m]

    for (const InpSection& s : doc.sections) {
        if (s.name == "JUNCTIONS") {
            for (const InpRow& row : s.rows) {
                expect_tokens(row, 2, 3, "junction");
                Node n;
                n.id = row.tokens[0];
                n.kind = NodeKind::junction;
                n.elevation = parse_number(row, 1, "elevation");
                n.base_demand =
                    row.tokens.size() > 2 ? parse_number(row, 2, "demand") / 1000.0 : 0.0;
                nodes.push_back(std::move(n));
            }
        } else if (s.name == "RESERVOIRS") {
            for (const InpRow& row : s.rows) {
                expect_tokens(row, 2, 2, "reservoir");
                Node n;
                n.id = row.tokens[0];
                n.kind = NodeKind::reservoir;
                n.elevation = parse_number(row, 1, "head");
                nodes.push_back(std::move(n));
            }
        } else if (s.name == "PIPES") {
            for (const InpRow& row : s.rows) {
                expect_tokens(row, 6, 7, "pipe");
                Link l;
                l.id = row.tokens[0];
                l.from = row.tokens[1];
                l.to = row.tokens[2];
                l.length = parse_number(row, 3, "length");
                l.diameter = parse_number(row, 4, "diameter") / 1000.0;
                l.roughness = parse_number(row, 5, "roughness");
                if (row.tokens.size() > 6) {
                    std::string status = lower(row.tokens[6]);
                    if (status == "open")
                        l.status = LinkStatus::open;
                    else if (status == "closed")
                        l.status = LinkStatus::closed;
                    else
                        throw ParseError(row.line, "unknown pipe status '" + row.tokens[6] + "'");
                }
                links.push_back(std::move(l));
            }
        } else if (s.name == "OPTIONS") {
            for (const InpRow& row : s.rows) {
                if (row.tokens.empty()) continue;
                std::string key = upper(row.tokens[0]);
                if (key == "HEADLOSS") {
                    expect_tokens(row, 2, 2, "option");
                    std::string formula = upper(row.tokens[1]);
                    if (formula != "H-W" && formula != "HW" && formula != "HAZEN-WILLIAMS")
                        throw ParseError(row.line, "unsupported headloss formula '" +
                                                       row.tokens[1] +
                                                       "' (only Hazen-Williams)");
                } else if (key == "UNITS") {
                    expect_tokens(row, 2, 2, "option");
                    if (upper(row.tokens[1]) != "LPS")
                        throw ParseError(row.line,
                                         "unsupported units '" + row.tokens[1] + "' (only LPS)");
                }
                // other option keys pass through untouched
            }
        } else if (s.name == "DESIGN") {
            for (const InpRow& row : s.rows) {
                expect_tokens(row, 2, 2, "design");
                if (upper(row.tokens[0]) != "MINPRESSURE")
                    throw ParseError(row.line,
                                     "unknown design key '" + row.tokens[0] + "'");
                h_star = parse_number(row, 1, "design pressure");
            }
        }
    }
    return Network(std::move(nodes), std::move(links), h_star);
}

Network parse_network(const std::string& text) {
    return network_from_document(parse_inp_document(text));
}

std::string emit_network(const Network& network) {
    std::ostringstream out;
    out << "[JUNCTIONS]\n;id\televation_m\tdemand_Ls\n";
    for (const Node& n : network.nodes())
        if (n.is_junction())
            out << n.id << '\t' << emit_plain(n.elevation) << '\t'
                << emit_scaled(n.base_demand, 1000.0) << '\n';
    out << "\n[RESERVOIRS]\n;id\thead_m\n";
    for (const Node& n : network.nodes())
        if (n.is_reservoir()) out << n.id << '\t' << emit_plain(n.elevation) << '\n';
    out << "\n[PIPES]\n;id\tfrom\tto\tlength_m\tdiameter_mm\troughness\tstatus\n";
    for (const Link& l : network.links())
        out << l.id << '\t' << l.from << '\t' << l.to << '\t' << emit_plain(l.length) << '\t'
            << emit_scaled(l.diameter, 1000.0) << '\t' << emit_plain(l.roughness) << '\t'
            << (l.status == LinkStatus::open ? "open" : "closed") << '\n';
    out << "\n[OPTIONS]\nUNITS\tLPS\nHEADLOSS\tH-W\n";
    out << "\n[DESIGN]\nMINPRESSURE\t" << emit_plain(network.design_pressure()) << '\n';
    out << "\n[END]\n";
    return out.str();
}

Partition parse_partition(const std::string& text) {
    Partition partition;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(line_no, "expected 'node_id,dma', got '" + line + "'");
        std::string node = trim(line.substr(0, comma));
        std::string label = trim(line.substr(comma + 1));
        if (label.find(',') != std::string::npos)
            throw ParseError(line_no, "too many fields in '" + line + "'");
        if (!header_seen) {
            if (lower(node) != "node_id" || lower(label) != "dma")
                throw ParseError(line_no, "missing 'node_id,dma' header");
            header_seen = true;
            continue;
        }
        if (node.empty() || label.empty())
            throw ParseError(line_no, "empty field in '" + line + "'");
        if (partition.labels.count(node))
            throw ParseError(line_no, "duplicate row for node '" + node + "'");
        partition.labels[node] = label;
    }
    if (!header_seen) throw ParseError(line_no, "missing 'node_id,dma' header");
    return partition;
}

std::string emit_partition(const Partition& partition) {
    std::ostringstream out;
    out << "node_id,dma\n";
    for (const auto& [node, label] : partition.labels) out << node << ',' << label << '\n';
    return out.str();
}

double round_sig6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::strtod(buf, nullptr);
}

namespace {

json row_to_json(const MetricsRow& row) {
    json j;
    j["name"] = row.layout;
    j["demand_multiplier"] = round_sig6(row.demand_multiplier);
    j["n_ec"] = row.n_ec ? json(*row.n_ec) : json(nullptr);
    j["n_fm"] = row.n_fm ? json(*row.n_fm) : json(nullptr);
    j["n_gv"] = row.n_gv ? json(*row.n_gv) : json(nullptr);
    j["balance_index"] = row.balance ? json(round_sig6(*row.balance)) : json(nullptr);
    j["h_min"] = round_sig6(row.stats.h_min);
    j["h_mean"] = round_sig6(row.stats.h_mean);
    j["h_max"] = round_sig6(row.stats.h_max);
    j["pressure_violations"] = static_cast<int>(row.stats.violating_nodes.size());
    j["resilience"] = round_sig6(row.resilience);
    return j;
}

MetricsRow row_from_json(const json& j) {
    MetricsRow row;
    row.layout = j.at("name").get<std::string>();
    row.demand_multiplier = j.at("demand_multiplier").get<double>();
    if (!j.at("n_ec").is_null()) row.n_ec = j.at("n_ec").get<int>();
    if (!j.at("n_fm").is_null()) row.n_fm = j.at("n_fm").get<int>();
    if (!j.at("n_gv").is_null()) row.n_gv = j.at("n_gv").get<int>();
    if (!j.at("balance_index").is_null()) row.balance = j.at("balance_index").get<double>();
    row.stats.h_min = j.at("h_min").get<double>();
    row.stats.h_mean = j.at("h_mean").get<double>();
    row.stats.h_max = j.at("h_max").get<double>();
    row.stats.violating_nodes.resize(j.at("pressure_violations").get<std::size_t>());
    row.resilience = j.at("resilience").get<double>();
    return row;
}

} // namespace

std::string emit_report(const DssReport& report) {
    json j;
    json scenario;
    scenario["network"] = report.scenario.network_path;
    scenario["partition"] = report.scenario.partition_path;
    scenario["demand_multiplier"] = round_sig6(report.scenario.demand_multiplier);
    scenario["h_star"] = round_sig6(report.scenario.h_star);
    scenario["seed"] = report.scenario.seed ? json(*report.scenario.seed) : json(nullptr);
    scenario["clusters"] = report.scenario.clusters ? json(*report.scenario.clusters) : json(nullptr);
    scenario["generated_at"] = report.scenario.generated_at;
    j["scenario"] = std::move(scenario);

    j["layouts"] = json::array();
    for (const MetricsRow& row : report.rows) j["layouts"].push_back(row_to_json(row));

    j["solutions"] = json::array();
    for (const DssSolution& s : report.solutions) {
        json sol;
        sol["rank"] = s.rank;
        std::string genes(s.genes.size(), '0');
        for (std::size_t i = 0; i < s.genes.size(); ++i)
            if (s.genes[i]) genes[i] = '1';
        sol["genes"] = genes;
        sol["flow_meters"] = s.metrics.n_fm ? json(*s.metrics.n_fm) : json(nullptr);
        sol["gate_valves"] = s.metrics.n_gv ? json(*s.metrics.n_gv) : json(nullptr);
        sol["reused_flow_meters"] = s.reused_flow_meters;
        sol["new_flow_meters"] = s.new_flow_meters;
        sol["new_device_cost"] =
            s.new_device_cost ? json(round_sig6(*s.new_device_cost)) : json(nullptr);
        sol["h_min"] = round_sig6(s.metrics.stats.h_min);
        sol["h_mean"] = round_sig6(s.metrics.stats.h_mean);
        sol["h_max"] = round_sig6(s.metrics.stats.h_max);
        sol["resilience"] = round_sig6(s.metrics.resilience);
        json devices;
        for (std::size_t i = 0; i < s.genes.size(); ++i)
            devices[s.gene_order[i]] = s.genes[i] ? "flow_meter" : "gate_valve";
        sol["devices"] = std::move(devices);
        j["solutions"].push_back(std::move(sol));
    }

    json ga;
    ga["ran"] = report.ga.ran;
    ga["skipped"] = report.ga.skipped;
    ga["skip_reason"] = report.ga.skip_reason;
    ga["method"] = report.ga.method;
    ga["seed"] = report.ga.seed;
    ga["evaluations"] = report.ga.evaluations;
    ga["best_infeasible_shortfall"] = report.ga.best_infeasible_shortfall
                                          ? json(round_sig6(*report.ga.best_infeasible_shortfall))
                                          : json(nullptr);
    j["ga"] = std::move(ga);
    return j.dump(2) + "\n";
}

DssReport parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("invalid report JSON: ") + e.what());
    }
    try {
        DssReport report;
        const json& sc = j.at("scenario");
        report.scenario.network_path = sc.at("network").get<std::string>();
        report.scenario.partition_path = sc.at("partition").get<std::string>();
        report.scenario.demand_multiplier = sc.at("demand_multiplier").get<double>();
        report.scenario.h_star = sc.at("h_star").get<double>();
        if (!sc.at("seed").is_null()) report.scenario.seed = sc.at("seed").get<std::uint64_t>();
        if (!sc.at("clusters").is_null()) report.scenario.clusters = sc.at("clusters").get<int>();
        report.scenario.generated_at = sc.at("generated_at").get<std::string>();

        for (const json& r : j.at("layouts")) report.rows.push_back(row_from_json(r));

        for (const json& sj : j.at("solutions")) {
            DssSolution s;
            s.rank = sj.at("rank").get<int>();
            const json& devices = sj.at("devices");
            for (auto it = devices.begin(); it != devices.end(); ++it)
                s.gene_order.push_back(it.key());
            std::sort(s.gene_order.begin(), s.gene_order.end());
            std::string genes = sj.at("genes").get<std::string>();
            if (genes.size() != s.gene_order.size())
                throw ParseError(0, "solution genes/devices length mismatch");
            s.genes.resize(genes.size());
            for (std::size_t i = 0; i < genes.size(); ++i) {
                s.genes[i] = genes[i] == '1' ? 1 : 0;
                std::string expect = s.genes[i] ? "flow_meter" : "gate_valve";
                if (devices.at(s.gene_order[i]).get<std::string>() != expect)
                    throw ParseError(0, "solution genes disagree with devices map at '" +
                                            s.gene_order[i] + "'");
            }
            s.reused_flow_meters = sj.at("reused_flow_meters").get<int>();
            s.new_flow_meters = sj.at("new_flow_meters").get<int>();
            if (!sj.at("new_device_cost").is_null())
                s.new_device_cost = sj.at("new_device_cost").get<double>();
            s.metrics.layout = "solution";
            s.metrics.n_ec = static_cast<int>(s.genes.size());
            if (!sj.at("flow_meters").is_null()) s.metrics.n_fm = sj.at("flow_meters").get<int>();
            if (!sj.at("gate_valves").is_null()) s.metrics.n_gv = sj.at("gate_valves").get<int>();
            s.metrics.stats.h_min = sj.at("h_min").get<double>();
            s.metrics.stats.h_mean = sj.at("h_mean").get<double>();
            s.metrics.stats.h_max = sj.at("h_max").get<double>();
            s.metrics.resilience = sj.at("resilience").get<double>();
            report.solutions.push_back(std::move(s));
        }

        const json& ga = j.at("ga");
        report.ga.ran = ga.at("ran").get<bool>();
        report.ga.skipped = ga.at("skipped").get<bool>();
        report.ga.skip_reason = ga.at("skip_reason").get<std::string>();
        report.ga.method = ga.at("method").get<std::string>();
        report.ga.seed = ga.at("seed").get<std::uint64_t>();
        report.ga.evaluations = ga.at("evaluations").get<std::size_t>();
        if (!ga.at("best_infeasible_shortfall").is_null())
            report.ga.best_infeasible_shortfall = ga.at("best_infeasible_shortfall").get<double>();
        return report;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("report JSON missing field: ") + e.what());
    }
}

InstalledDevices parse_installed(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("invalid installed-devices JSON: ") + e.what());
    }
    InstalledDevices out;
    try {
        for (const json& id : j.at("flow_meters")) out.flow_meters.insert(id.get<std::string>());
        for (const json& id : j.at("gate_valves")) out.gate_valves.insert(id.get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("installed-devices JSON: ") + e.what());
    }
    for (const std::string& id : out.flow_meters)
        if (out.gate_valves.count(id))
            throw ParseError(0, "link '" + id + "' listed as both flow meter and gate valve");
    return out;
}

std::string emit_installed(const InstalledDevices& installed) {
    json j;
    j["flow_meters"] = json::array();
    for (const std::string& id : installed.flow_meters) j["flow_meters"].push_back(id);
    j["gate_valves"] = json::array();
    for (const std::string& id : installed.gate_valves) j["gate_valves"].push_back(id);
    return j.dump(2) + "\n";
}

DividingConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("invalid device-assignment JSON: ") + e.what());
    }
    DividingConfig config;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto device = device_from_string(it.value().get<std::string>());
        if (!device || *device == Device::none)
            throw ParseError(0, "link '" + it.key() + "': device must be flow_meter or gate_valve");
        config.assignment[it.key()] = *device;
    }
    return config;
}

std::string emit_config(const DividingConfig& config) {
    json j = json::object();
    for (const auto& [link, device] : config.assignment) j[link] = to_string(device);
    return j.dump(2) + "\n";
}

namespace {

const char* kPalette[] = {"#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c",
                          "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3d9a", "#ffff99", "#b15928"};

std::map<std::string, std::string> dma_colors(const std::vector<std::string>& labels) {
    std::map<std::string, std::string> colors;
    std::size_t i = 0;
    for (const std::string& label : labels)
        colors[label] = kPalette[i++ % (sizeof(kPalette) / sizeof(kPalette[0]))];
    return colors;
}

} // namespace

std::string emit_graph(const Network& network, const Partition* partition) {
    std::ostringstream out;
    out << "graph wds {\n  node [shape=circle, style=filled, fillcolor=white];\n";
    std::map<std::string, std::string> colors;
    if (partition) colors = dma_colors(partition->dma_labels());
    for (const Node& n : network.nodes()) {
        out << "  \"" << n.id << "\"";
        std::vector<std::string> attrs;
        if (n.is_reservoir()) attrs.push_back("shape=box");
        if (partition) {
            if (const std::string* label = partition->label_of(n.id)) {
                auto it = colors.find(*label);
                if (it != colors.end()) attrs.push_back("fillcolor=\"" + it->second + "\"");
            }
        }
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
            out << "]";
        }
        out << ";\n";
    }
    std::set<std::string> boundary;
    if (partition) boundary = boundary_links(network, *partition);
    for (const Link& l : network.links()) {
        out << "  \"" << l.from << "\" -- \"" << l.to << "\" [label=\"" << l.id << "\"";
        if (boundary.count(l.id)) out << ", penwidth=2.5, color=black";
        if (l.status == LinkStatus::closed) out << ", style=dotted";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_graph(const Network& /*network*/, const MsNetwork& ms) {
    std::ostringstream out;
    out << "graph ms {\n  node [shape=circle, style=filled, fillcolor=white];\n";
    std::vector<std::string> labels;
    for (const auto& [label, nodes] : ms.dma_index) labels.push_back(label);
    auto colors = dma_colors(labels);
    for (const std::string& id : ms.ms_nodes)
        out << "  \"" << id << "\" [fillcolor=\"" << colors.at(ms.node_dma.at(id)) << "\"];\n";
    for (const auto& h : ms.boundary_hyperlinks)
        out << "  \"" << h.a << "\" -- \"" << h.b << "\" [label=\"" << h.link_id
            << "\", penwidth=2.5, color=black];\n";
    for (const auto& h : ms.internal_hyperlinks)
        out << "  \"" << h.a << "\" -- \"" << h.b << "\" [style=dashed, color=grey];\n";
    out << "}\n";
    return out.str();
}

} // namespace dyndma
