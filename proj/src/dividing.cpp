#include "dyndma/dividing.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "dyndma/errors.hpp"

namespace dyndma {

namespace {

// Thin wrapper over mt19937_64 with explicit draw functions; the standard
// distributions are not portable across library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    double unit() { return (engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

double eval_shortfall(const EvalResult& r, double h_star) {
    if (!r.converged || !r.disconnected.empty()) return std::numeric_limits<double>::infinity();
    return std::max(0.0, h_star - r.stats.h_min);
}

// Total order used for tournament selection: feasible first by resilience,
// then fewer flow meters; infeasible by smaller shortfall. Genes break ties.
bool better(const EvalResult& a, const Genes& ga, const EvalResult& b, const Genes& gb) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.feasible) {
        if (a.resilience != b.resilience) return a.resilience > b.resilience;
        int fa = static_cast<int>(std::count(ga.begin(), ga.end(), 1));
        int fb = static_cast<int>(std::count(gb.begin(), gb.end(), 1));
        if (fa != fb) return fa < fb;
    } else {
        if (a.shortfall != b.shortfall) return a.shortfall < b.shortfall;
    }
    return ga < gb;
}

void sort_solutions(std::vector<Individual>& solutions) {
    std::sort(solutions.begin(), solutions.end(), [](const Individual& a, const Individual& b) {
        if (a.resilience != b.resilience) return a.resilience > b.resilience;
        if (a.flow_meters != b.flow_meters) return a.flow_meters < b.flow_meters;
        return a.genes < b.genes;
    });
}

// Shared evaluation cache; gene vectors repeat heavily across generations.
class Evaluator {
public:
    Evaluator(const Network& network, const Partition& partition)
        : network_(network), partition_(partition),
          gene_order_(boundary_gene_order(network, partition)) {}

    const std::vector<std::string>& gene_order() const { return gene_order_; }
    std::size_t evaluations() const { return cache_.size(); }

    const EvalResult& operator()(const Genes& genes) {
        auto it = cache_.find(genes);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(genes, evaluate(network_, partition_, genes)).first->second;
    }

    OptimizeResult collect() const {
        OptimizeResult out;
        out.gene_order = gene_order_;
        out.evaluations = cache_.size();
        double best_shortfall = std::numeric_limits<double>::infinity();
        for (const auto& [genes, result] : cache_) {
            if (result.feasible) {
                Individual ind;
                ind.genes = genes;
                ind.resilience = result.resilience;
                ind.stats = result.stats;
                ind.flow_meters = static_cast<int>(std::count(genes.begin(), genes.end(), 1));
                out.solutions.push_back(std::move(ind));
            } else if (result.shortfall < best_shortfall ||
                       (result.shortfall == best_shortfall && !out.best_infeasible)) {
                best_shortfall = result.shortfall;
                out.best_infeasible = genes;
                out.best_infeasible_shortfall = result.shortfall;
            }
        }
        sort_solutions(out.solutions);
        if (!out.solutions.empty()) {
            out.best_infeasible.reset();
            out.best_infeasible_shortfall.reset();
        }
        return out;
    }

private:
    const Network& network_;
    const Partition& partition_;
    std::vector<std::string> gene_order_;
    std::map<Genes, EvalResult> cache_;
};

} // namespace

BigUint count_configs(int n_ec, int n_fm) {
    if (n_fm < 0 || n_fm > n_ec)
        throw Error("count_configs: flow-meter count " + std::to_string(n_fm) +
                    " outside [0, " + std::to_string(n_ec) + "]");
    // multiplicative form keeps every intermediate an exact integer
    BigUint result(1);
    int k = std::min(n_fm, n_ec - n_fm);
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<std::uint32_t>(n_ec - k + i);
        result /= static_cast<std::uint32_t>(i);
    }
    return result;
}

std::vector<std::string> boundary_gene_order(const Network& network, const Partition& partition) {
    std::set<std::string> boundary = boundary_links(network, partition);
    return {boundary.begin(), boundary.end()};
}

DividingConfig config_from_genes(const Genes& genes, const std::vector<std::string>& gene_order) {
    if (genes.size() != gene_order.size())
        throw Error("config_from_genes: gene length " + std::to_string(genes.size()) +
                    " does not match boundary-link count " + std::to_string(gene_order.size()));
    DividingConfig config;
    for (std::size_t i = 0; i < genes.size(); ++i)
        config.assignment[gene_order[i]] = genes[i] ? Device::flow_meter : Device::gate_valve;
    return config;
}

EvalResult evaluate(const Network& network, const Partition& partition, const Genes& genes) {
    const auto gene_order = boundary_gene_order(network, partition);
    DividingConfig config = config_from_genes(genes, gene_order);

    EvalResult result;
    result.disconnected = check_connectivity(network, &config);
    if (!result.disconnected.empty()) {
        result.shortfall = std::numeric_limits<double>::infinity();
        return result;
    }
    HydraulicState state = solve(network, &config);
    result.converged = state.converged;
    if (!state.converged) {
        result.shortfall = std::numeric_limits<double>::infinity();
        return result;
    }
    result.stats = pressure_stats(network, state);
    result.resilience = resilience_index(network, state);
    result.feasible = result.stats.h_min >= network.design_pressure();
    result.shortfall = eval_shortfall(result, network.design_pressure());
    return result;
}

DividingConfig Individual::config(const std::vector<std::string>& gene_order) const {
    return config_from_genes(genes, gene_order);
}

OptimizeResult ga_optimize(const Network& network, const Partition& partition,
                           const GaParams& params) {
    if (params.population < 2) throw Error("ga_optimize: population must be at least 2");
    if (params.crossover_rate < 0 || params.crossover_rate > 1 || params.mutation_rate < 0 ||
        params.mutation_rate > 1)
        throw Error("ga_optimize: rates must lie in [0,1]");

    Evaluator eval(network, partition);
    const std::size_t n_genes = eval.gene_order().size();
    if (n_genes == 0) throw Error("ga_optimize: partition has no boundary links");

    Rng rng(params.seed);
    std::vector<Genes> population(params.population);
    for (Genes& genes : population) {
        genes.resize(n_genes);
        for (auto& bit : genes) bit = rng.chance(0.5) ? 1 : 0;
    }

    auto tournament = [&]() -> const Genes& {
        const Genes& a = population[rng.below(population.size())];
        const Genes& b = population[rng.below(population.size())];
        return better(eval(a), a, eval(b), b) ? a : b;
    };

    for (int gen = 0; gen <= params.generations; ++gen) {
        for (const Genes& genes : population) eval(genes);
        if (gen == params.generations) break;

        std::vector<Genes> ranked = population;
        std::sort(ranked.begin(), ranked.end(), [&](const Genes& a, const Genes& b) {
            return better(eval(a), a, eval(b), b);
        });

        std::vector<Genes> next;
        next.reserve(population.size());
        for (int e = 0; e < params.elitism && e < static_cast<int>(ranked.size()); ++e)
            next.push_back(ranked[e]);

        while (next.size() < population.size()) {
            Genes child_a = tournament();
            Genes child_b = tournament();
            if (rng.chance(params.crossover_rate)) {
                for (std::size_t i = 0; i < n_genes; ++i)
                    if (rng.chance(0.5)) std::swap(child_a[i], child_b[i]);
            }
            for (auto& bit : child_a)
                if (rng.chance(params.mutation_rate)) bit ^= 1;
            for (auto& bit : child_b)
                if (rng.chance(params.mutation_rate)) bit ^= 1;
            next.push_back(std::move(child_a));
            if (next.size() < population.size()) next.push_back(std::move(child_b));
        }
        population = std::move(next);
    }

    OptimizeResult out = eval.collect();
    out.seed = params.seed;
    return out;
}

OptimizeResult exhaustive_optimize(const Network& network, const Partition& partition,
                                   std::size_t cap) {
    Evaluator eval(network, partition);
    const std::size_t n_genes = eval.gene_order().size();
    if (n_genes >= 63 || (std::size_t{1} << n_genes) > cap)
        throw Error("exhaustive_optimize: 2^" + std::to_string(n_genes) +
                    " configurations exceed the cap of " + std::to_string(cap));

    Genes genes(n_genes, 0);
    const std::size_t total = std::size_t{1} << n_genes;
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t i = 0; i < n_genes; ++i) genes[i] = (code >> i) & 1 ? 1 : 0;
        eval(genes);
    }
    return eval.collect();
}

} // namespace dyndma
