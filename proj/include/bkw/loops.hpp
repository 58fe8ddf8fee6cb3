#pragma once

#include "bkw/lattice.hpp"
#include "bkw/laurent.hpp"
#include "bkw/random_cluster.hpp"
#include "bkw/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bkw {

// A closed strand of medial edges, stored in anticlockwise traversal order.
struct Loop {
    std::vector<int> edges;
    std::vector<std::uint8_t> forward;  // edge traversed in its positive axis direction
    bool boundary = false;              // contains a boundary-cycle edge
};

// Fully packed loop configuration on the medial edges of a domain. Loops are
// numbered in discovery order: by their smallest medial edge index.
struct LoopConfig {
    const Domain* domain = nullptr;
    std::vector<Loop> loops;
    std::vector<int> loop_of_edge;     // per medial edge
    std::vector<Diagonal> pairing;     // per internal vertex (primal edge index)
};

struct LoopStats {
    int l = 0;
    int l_i = 0;
    int l_b = 0;
};

// xi = +1 for anticlockwise, -1 for clockwise; boundary loops are always +1.
struct OrientedLoopConfig {
    LoopConfig base;
    std::vector<std::int8_t> xi;

    int anticlockwise() const;
    int clockwise() const;
};

// The strand pairing at an internal vertex induced by a bond configuration:
// an open primal edge keeps the strands on the odd faces' sides, a closed one
// on the even faces' sides.
Diagonal interface_pairing(const Domain& domain, const BondConfig& cfg, int primal_edge);

// Closes strands into loops for a given pairing at every internal vertex.
LoopConfig trace_loops(const Domain& domain, std::vector<Diagonal> pairing);

LoopConfig extract_loops(const BondConfig& cfg);
LoopStats loop_stats(const LoopConfig& lc);

// Checks the strands at each internal vertex follow the recorded pairing and
// every medial edge lies on exactly one loop.
bool loops_well_formed(const LoopConfig& lc);

// Total turning of a closed walk in quarter turns. Throws std::logic_error if
// the walk is not closed or its winding is not +-4 (i.e. +-2 pi).
int loop_winding(std::span<const int> edges, std::span<const std::uint8_t> forward, const Domain& domain);

OrientedLoopConfig orient_loops(const LoopConfig& lc, double lambda, const KeyedStream& coins);
// Explicit orientation (one entry per loop); rejects a clockwise boundary loop.
OrientedLoopConfig orient_loops(const LoopConfig& lc, std::vector<std::int8_t> xi);

double anticlockwise_probability(double lambda);

// e^{lambda (N_acw - N_cw)}.
double oriented_weight(const OrientedLoopConfig& olc, double lambda);
// Symbolic: x^{2 sign (N_acw - N_cw)} with x = e^{lambda/2}.
Laurent oriented_weight(const OrientedLoopConfig& olc, int sign);

// Arrow per medial edge (1 = positive axis direction) induced by the orientation.
std::vector<std::uint8_t> loop_arrows(const OrientedLoopConfig& olc);

}  // namespace bkw
