#ifndef DYNDMA_HYDRAULICS_HPP
#define DYNDMA_HYDRAULICS_HPP

#include <map>
#include <string>
#include <vector>

#include "dyndma/model.hpp"

namespace dyndma {

// One converged (or capped) steady-state snapshot.
struct HydraulicState {
    std::map<std::string, double> total_head;    // node id -> m
    std::map<std::string, double> pressure_head; // junction id -> m (total head - elevation)
    std::map<std::string, double> flow;          // link id -> m3/s, from->to positive
    bool converged = false;
    int iterations = 0;
    double max_residual = 0.0;    // worst junction continuity residual [m3/s]
    double max_head_change = 0.0; // worst head update of the final iteration [m]
};

struct PressureStats {
    double h_min = 0.0;
    double h_mean = 0.0;
    double h_max = 0.0;
    std::vector<std::string> violating_nodes; // junctions with pressure_head < h*
};

// Which head enters Eq.-style resilience sums. total_head is Todini's original
// convention (h_i and the required head are total heads, h*_i = z_i + h*);
// pressure_head is the literal mixed-convention reading.
enum class HeadConvention { total_head, pressure_head };

struct SolverOptions {
    double flow_tolerance = 1e-6; // m3/s, max junction continuity residual
    double head_tolerance = 1e-6; // m, max head change per iteration
    int max_iterations = 200;
};

// Demand-driven steady state by the global gradient (node-loop Newton) scheme
// with Hazen-Williams friction. Gate-valve assignments in config close their
// links; flow-meter assignments open them. Throws SolverError when a junction
// is disconnected from every reservoir or the node matrix is singular. On
// hitting the iteration cap the state is returned with converged=false.
HydraulicState solve(const Network& network, const DividingConfig* config = nullptr,
                     const SolverOptions& options = {});

// Todini resilience index: surplus power delivered to users over the surplus
// power available at the sources. 1 in the lossless limit, <= 0 when no
// surplus remains. Throws Error on a degenerate zero denominator.
double resilience_index(const Network& network, const HydraulicState& state,
                        HeadConvention convention = HeadConvention::total_head);

// Min/max over all junction pressure heads; mean over demand-carrying
// junctions (falling back to all junctions when none carries demand).
PressureStats pressure_stats(const Network& network, const HydraulicState& state);

} // namespace dyndma

#endif
