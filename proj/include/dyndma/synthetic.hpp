#ifndef DYNDMA_SYNTHETIC_HPP
#define DYNDMA_SYNTHETIC_HPP

#include <utility>

#include "dyndma/model.hpp"

namespace dyndma {

// Deterministic benchmark network: a 3x3 grid of districts fed by two
// fixed-head reservoirs at opposite corners. Shaped like the mid-size systems
// the reconfiguration flow targets: 182 junctions + 2 reservoirs, 282 pipes,
// 9 connected DMAs, with the current division encoded in the pipe statuses
// (closed boundary pipe = gate valve, open = flow meter).
struct SyntheticLayout {
    Network network;
    Partition partition;
};

SyntheticLayout make_benchmark_network();

} // namespace dyndma

#endif
