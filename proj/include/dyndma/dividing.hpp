#ifndef DYNDMA_DIVIDING_HPP
#define DYNDMA_DIVIDING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyndma/bigint.hpp"
#include "dyndma/hydraulics.hpp"
#include "dyndma/model.hpp"

namespace dyndma {

struct GaParams {
    int population = 50;
    int generations = 100;
    double crossover_rate = 0.8;
    double mutation_rate = 0.02;
    std::uint64_t seed = 0;
    int elitism = 1;
};

// Gene value 1 places a flow meter (pipe open), 0 a gate valve (pipe closed).
using Genes = std::vector<std::uint8_t>;

struct EvalResult {
    bool feasible = false;
    bool converged = false;
    std::vector<std::string> disconnected; // junctions stranded by this gene vector
    double resilience = 0.0;
    PressureStats stats;
    double shortfall = 0.0; // max(0, h* - h_min); infinity when unsolvable
};

// A feasible, evaluated configuration.
struct Individual {
    Genes genes;
    double resilience = 0.0;
    PressureStats stats;
    int flow_meters = 0;

    DividingConfig config(const std::vector<std::string>& gene_order) const;
};

struct OptimizeResult {
    std::vector<std::string> gene_order; // boundary link ids, sorted; indexes the genes
    std::vector<Individual> solutions;   // distinct feasible, best first
    std::optional<Genes> best_infeasible;
    std::optional<double> best_infeasible_shortfall;
    std::uint64_t seed = 0;
    std::size_t evaluations = 0; // distinct gene vectors solved
};

// Exact number of dividing configurations, the binomial C(n_ec, n_fm).
BigUint count_configs(int n_ec, int n_fm);

// Canonical gene indexing: boundary link ids in sorted order.
std::vector<std::string> boundary_gene_order(const Network& network, const Partition& partition);

DividingConfig config_from_genes(const Genes& genes, const std::vector<std::string>& gene_order);

// Solves the network under the configuration encoded by genes. Feasible iff
// the solve converges, nothing is disconnected, and h_min >= h*.
EvalResult evaluate(const Network& network, const Partition& partition, const Genes& genes);

// Generational GA with tournament selection (size 2), uniform crossover and
// per-bit mutation; infeasible individuals rank strictly below feasible ones.
// Fully deterministic for a given seed.
OptimizeResult ga_optimize(const Network& network, const Partition& partition,
                           const GaParams& params);

// Evaluates every gene vector; same ranking as ga_optimize. Throws Error when
// 2^N_ec exceeds cap.
OptimizeResult exhaustive_optimize(const Network& network, const Partition& partition,
                                   std::size_t cap = 65536);

} // namespace dyndma

#endif
