#include "dyndma/hydraulics.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "dyndma/errors.hpp"

namespace dyndma {

namespace {

constexpr double kHwExponent = 1.852;      // Hazen-Williams flow exponent
constexpr double kHwCoefficient = 10.67;   // SI resistance coefficient
constexpr double kInitialFlow = 1e-3;      // m3/s, starting guess for every link
constexpr double kDerivativeFlowFloor = 1e-7; // keeps 1/(dh/dQ) finite near Q=0
constexpr double kMinDamping = 1.0 / 64.0;

struct ActiveLink {
    std::size_t link_pos; // index into network.links()
    int from = -1;        // junction index, -1 when the endpoint is a reservoir
    int to = -1;
    double fixed_from = 0.0; // reservoir head when from < 0
    double fixed_to = 0.0;
    double resistance = 0.0; // r in h_f = r Q |Q|^(n-1)
};

double hw_resistance(const Link& l) {
    return kHwCoefficient * l.length /
           (std::pow(l.roughness, kHwExponent) * std::pow(l.diameter, 4.871));
}

} // namespace

HydraulicState solve(const Network& network, const DividingConfig* config,
                     const SolverOptions& options) {
    {
        auto violations = validate(network);
        if (!violations.empty())
            throw SolverError("solve: network does not validate ('" + violations.front().entity +
                              "': " + violations.front().rule + ")");
        auto stranded = check_connectivity(network, config);
        if (!stranded.empty()) {
            std::ostringstream msg;
            msg << "solve: junctions disconnected from every reservoir:";
            for (const auto& id : stranded) msg << " " << id;
            throw SolverError(msg.str());
        }
    }

    // junction indexing and link traversal follow sorted ids, so the
    // assembled sums do not depend on declaration order
    std::vector<const Node*> junctions;
    std::map<std::string, int> junction_index;
    double reservoir_head_sum = 0.0;
    int reservoirs = 0;
    {
        std::map<std::string, const Node*> by_id;
        for (const Node& n : network.nodes()) by_id.emplace(n.id, &n);
        for (const auto& [id, n] : by_id) {
            if (n->is_junction()) {
                junction_index.emplace(id, static_cast<int>(junctions.size()));
                junctions.push_back(n);
            } else {
                reservoir_head_sum += n->elevation;
                ++reservoirs;
            }
        }
    }
    const int nj = static_cast<int>(junctions.size());
    const double mean_reservoir_head = reservoir_head_sum / std::max(reservoirs, 1);

    std::vector<std::size_t> link_order(network.links().size());
    for (std::size_t i = 0; i < link_order.size(); ++i) link_order[i] = i;
    std::sort(link_order.begin(), link_order.end(), [&](std::size_t a, std::size_t b) {
        return network.links()[a].id < network.links()[b].id;
    });

    // active links: effectively open, endpoints distinct
    std::vector<ActiveLink> active;
    for (std::size_t i : link_order) {
        const Link& l = network.links()[i];
        if (!effectively_open(l, config)) continue;
        if (l.from == l.to) continue; // self-loop carries no flow
        ActiveLink al;
        al.link_pos = i;
        al.resistance = hw_resistance(l);
        const Node* a = network.find_node(l.from);
        const Node* b = network.find_node(l.to);
        if (a->is_junction())
            al.from = junction_index.at(l.from);
        else
            al.fixed_from = a->elevation;
        if (b->is_junction())
            al.to = junction_index.at(l.to);
        else
            al.fixed_to = b->elevation;
        active.push_back(al);
    }

    std::vector<double> demand(nj);
    for (int j = 0; j < nj; ++j) demand[j] = junctions[j]->base_demand;

    std::vector<double> head(nj, mean_reservoir_head);
    std::vector<double> flow(active.size(), kInitialFlow);

    auto continuity_residual = [&](const std::vector<double>& q, double& worst) {
        std::vector<double> excess(nj, 0.0);
        for (std::size_t a = 0; a < active.size(); ++a) {
            if (active[a].from >= 0) excess[active[a].from] -= q[a];
            if (active[a].to >= 0) excess[active[a].to] += q[a];
        }
        worst = 0.0;
        for (int j = 0; j < nj; ++j)
            worst = std::max(worst, std::abs(excess[j] - demand[j]));
        return worst;
    };

    HydraulicState state;
    double prev_residual = 0.0;
    continuity_residual(flow, prev_residual);

    Eigen::SparseMatrix<double> A(nj, nj);
    Eigen::VectorXd F(nj);
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> new_head(nj), new_flow(active.size());
    std::vector<double> trial_head(nj), trial_flow(active.size());

    int it = 0;
    for (it = 1; it <= options.max_iterations; ++it) {
        triplets.clear();
        F.setZero();

        for (std::size_t a = 0; a < active.size(); ++a) {
            const ActiveLink& al = active[a];
            if (al.from < 0 && al.to < 0) continue; // reservoir-reservoir pipe, solved directly
            double q = flow[a];
            double abs_q = std::abs(q);
            double hf_signed = al.resistance * q * std::pow(abs_q, kHwExponent - 1.0);
            double gradient = kHwExponent * al.resistance *
                              std::pow(std::max(abs_q, kDerivativeFlowFloor), kHwExponent - 1.0);
            double p = 1.0 / gradient;
            double y = p * hf_signed;

            if (al.from >= 0) {
                triplets.emplace_back(al.from, al.from, p);
                F[al.from] -= (q - y);
            } else {
                F[al.to] += p * al.fixed_from;
            }
            if (al.to >= 0) {
                triplets.emplace_back(al.to, al.to, p);
                F[al.to] += (q - y);
            } else {
                F[al.from] += p * al.fixed_to;
            }
            if (al.from >= 0 && al.to >= 0) {
                triplets.emplace_back(al.from, al.to, -p);
                triplets.emplace_back(al.to, al.from, -p);
            }
        }
        for (int j = 0; j < nj; ++j) F[j] -= demand[j];

        A.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(A);
        if (chol.info() != Eigen::Success) {
            std::ostringstream msg;
            msg << "solve: singular node matrix; implicated junctions:";
            for (int j = 0; j < nj; ++j) msg << " " << junctions[j]->id;
            throw SolverError(msg.str());
        }
        Eigen::VectorXd H = chol.solve(F);

        for (int j = 0; j < nj; ++j) new_head[j] = H[j];
        for (std::size_t a = 0; a < active.size(); ++a) {
            const ActiveLink& al = active[a];
            if (al.from < 0 && al.to < 0) {
                // head difference is fixed, so the flow is known in closed form
                double dh = al.fixed_from - al.fixed_to;
                double mag = std::pow(std::abs(dh) / al.resistance, 1.0 / kHwExponent);
                new_flow[a] = dh >= 0 ? mag : -mag;
                continue;
            }
            double q = flow[a];
            double abs_q = std::abs(q);
            double hf_signed = al.resistance * q * std::pow(abs_q, kHwExponent - 1.0);
            double gradient = kHwExponent * al.resistance *
                              std::pow(std::max(abs_q, kDerivativeFlowFloor), kHwExponent - 1.0);
            double p = 1.0 / gradient;
            double ha = al.from >= 0 ? new_head[al.from] : al.fixed_from;
            double hb = al.to >= 0 ? new_head[al.to] : al.fixed_to;
            new_flow[a] = q - p * hf_signed + p * (ha - hb);
        }

        // accept the full step unless it genuinely worsens an unconverged
        // continuity residual (noise-level fluctuations do not count)
        double lambda = 1.0;
        double residual = 0.0;
        while (true) {
            for (int j = 0; j < nj; ++j)
                trial_head[j] = head[j] + lambda * (new_head[j] - head[j]);
            for (std::size_t a = 0; a < active.size(); ++a)
                trial_flow[a] = flow[a] + lambda * (new_flow[a] - flow[a]);
            continuity_residual(trial_flow, residual);
            if (residual <= prev_residual || residual <= options.flow_tolerance ||
                lambda <= kMinDamping)
                break;
            lambda *= 0.5;
        }

        double head_change = 0.0;
        for (int j = 0; j < nj; ++j)
            head_change = std::max(head_change, std::abs(trial_head[j] - head[j]));

        head = trial_head;
        flow = trial_flow;
        prev_residual = residual;
        state.max_residual = residual;
        state.max_head_change = head_change;

        if (residual < options.flow_tolerance && head_change < options.head_tolerance) {
            state.converged = true;
            break;
        }
    }
    state.iterations = std::min(it, options.max_iterations);

    for (const Node& n : network.nodes()) {
        if (n.is_reservoir()) {
            state.total_head[n.id] = n.elevation;
        } else {
            double h = head[junction_index.at(n.id)];
            state.total_head[n.id] = h;
            state.pressure_head[n.id] = h - n.elevation;
        }
    }
    for (const Link& l : network.links()) state.flow[l.id] = 0.0;
    for (std::size_t a = 0; a < active.size(); ++a)
        state.flow[network.links()[active[a].link_pos].id] = flow[a];
    return state;
}

double resilience_index(const Network& network, const HydraulicState& state,
                        HeadConvention convention) {
    const double h_star = network.design_pressure();

    double delivered = 0.0;     // sum Q_i (h_i - h*_i) over demand junctions
    double required = 0.0;      // sum Q_i h*_i
    double total_demand = 0.0;
    for (const Node& n : network.nodes()) {
        if (!n.is_junction() || n.base_demand <= 0.0) continue;
        total_demand += n.base_demand;
        double h_i, h_req;
        if (convention == HeadConvention::total_head) {
            h_i = state.total_head.at(n.id);
            h_req = n.elevation + h_star;
        } else {
            h_i = state.pressure_head.at(n.id);
            h_req = h_star;
        }
        delivered += n.base_demand * (h_i - h_req);
        required += n.base_demand * h_req;
    }

    // computed discharge leaving each reservoir
    double source_power = 0.0; // sum Q_r H_r
    std::map<std::string, double> outflow;
    for (const Link& l : network.links()) {
        auto it = state.flow.find(l.id);
        if (it == state.flow.end()) continue;
        const Node* a = network.find_node(l.from);
        const Node* b = network.find_node(l.to);
        if (a && a->is_reservoir()) outflow[a->id] += it->second;
        if (b && b->is_reservoir()) outflow[b->id] -= it->second;
    }
    for (const Node& n : network.nodes())
        if (n.is_reservoir()) source_power += outflow[n.id] * n.elevation;

    double denominator = source_power - required;
    if (total_demand <= 0.0 || std::abs(denominator) < 1e-12)
        throw Error("resilience_index: no net driving energy (zero denominator)");
    return delivered / denominator;
}

PressureStats pressure_stats(const Network& network, const HydraulicState& state) {
    PressureStats stats;
    const double h_star = network.design_pressure();
    bool first = true;
    double demand_sum = 0.0, all_sum = 0.0;
    int demand_count = 0, all_count = 0;
    for (const Node& n : network.nodes()) {
        if (!n.is_junction()) continue;
        double p = state.pressure_head.at(n.id);
        if (first) {
            stats.h_min = stats.h_max = p;
            first = false;
        } else {
            stats.h_min = std::min(stats.h_min, p);
            stats.h_max = std::max(stats.h_max, p);
        }
        all_sum += p;
        ++all_count;
        if (n.base_demand > 0.0) {
            demand_sum += p;
            ++demand_count;
        }
        if (p < h_star) stats.violating_nodes.push_back(n.id);
    }
    stats.h_mean = demand_count > 0 ? demand_sum / demand_count
                                    : (all_count > 0 ? all_sum / all_count : 0.0);
    std::sort(stats.violating_nodes.begin(), stats.violating_nodes.end());
    return stats;
}

} // namespace dyndma
