#ifndef DYNDMA_TESTS_FIXTURES_HPP
#define DYNDMA_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "dyndma/model.hpp"

namespace dyndma::tests {

struct Fixture {
    Network network;
    Partition partition;
};

// reservoir (50 m) -> one pipe (L=1000, D=0.3, C=130) -> junction demanding 0.01 m3/s
Network single_pipe_network(double demand = 0.01);

// reservoir -> J1 -> J2, both pipes identical to the single-pipe case
Network two_pipe_series_network();

// like single_pipe_network but with two identical parallel pipes
Network parallel_pipe_network();

// all demands zero, single reservoir
Network zero_demand_network();

// flat elevations, oversized pipes: the lossless limit
Network lossless_network();

// 2x2 grid of 4-junction ring DMAs (A,B,C,D), one boundary pipe per adjacent
// pair, reservoir feeding DMA A; all pipes open
Fixture four_dma_toy();

// two path-shaped DMAs joined by two boundary pipes
Fixture two_dma_paths();

// six path-shaped DMAs: two triangles bridged by a single boundary pipe
Fixture barbell_six_dmas();

// two DMAs joined by n_boundary parallel corridors; every junction demands
// water, so closing corridors measurably hurts resilience
Fixture corridor_fixture(int n_boundary, double demand_scale = 1.0);

} // namespace dyndma::tests

#endif
