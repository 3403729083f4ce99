// Writes the bundled benchmark network and its DMA partition to a directory
// (default: data/). The generator is deterministic; re-running reproduces the
// committed files byte for byte.

#include <iostream>

#include "dyndma/inp_io.hpp"
#include "dyndma/pipeline.hpp"
#include "dyndma/synthetic.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    dyndma::SyntheticLayout layout = dyndma::make_benchmark_network();

    dyndma::write_file(dir + "/parete_like.inp", dyndma::emit_network(layout.network));
    dyndma::write_file(dir + "/parete_like_dmas.csv", dyndma::emit_partition(layout.partition));

    auto boundary = dyndma::boundary_links(layout.network, layout.partition);
    std::cout << "nodes: " << layout.network.nodes().size()
              << " (junctions " << layout.network.junction_count() << ", reservoirs "
              << layout.network.reservoir_count() << ")\n"
              << "pipes: " << layout.network.links().size() << "\n"
              << "DMAs: " << layout.partition.cluster_count() << "\n"
              << "boundary pipes: " << boundary.size() << "\n";
    return 0;
}
