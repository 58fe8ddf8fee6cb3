#pragma once

#include "bkw/lattice.hpp"
#include "bkw/loops.hpp"
#include "bkw/random_cluster.hpp"
#include "bkw/six_vertex.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bkw {

// Integer heights on the face sites of a domain, normalized so h(base) = 0.
struct HeightFunction {
    const Domain* domain = nullptr;
    FaceCoord base;
    std::vector<int> values;  // indexed by face site

    int at(FaceCoord f) const;  // throws std::out_of_range for faces off the domain
};

// Crossing a horizontal medial edge upwards adds +1 when its arrow points
// west; crossing a vertical one rightwards adds +1 when its arrow points
// north. Throws std::logic_error if the increments are not a gradient.
HeightFunction height_from_arrows(const SixVertexConfig& cfg, FaceCoord base);
HeightFunction height_from_arrows(const Domain& domain, std::span<const std::uint8_t> arrows, FaceCoord base);

// h(v) = sum over loops of xi_L (s_L(base) - s_L(v)), s_L = 1 when L winds
// around the face center.
HeightFunction height_from_loops(const OrientedLoopConfig& olc, FaceCoord base);

// Faces on which a single loop winds once (0/1 per face site).
std::vector<std::uint8_t> loop_interior(const Domain& domain, const Loop& loop);

struct HeightCluster {
    std::vector<int> sites;
    int height = 0;
    bool primal = true;
    bool touches_boundary = false;  // contains a boundary vertex or an outer face
};

struct HeightClusters {
    std::vector<int> label;  // per face site
    std::vector<HeightCluster> clusters;
};

// Maximal sets of same-height faces joined across the diagonals of medial
// vertices; outer faces count as one face.
HeightClusters height_clusters(const HeightFunction& h);

// At every internal medial vertex, either the two primal faces or the two
// dual faces carry equal heights.
bool covering_property(const HeightFunction& h);

// gamma(C) is contained in C'. Throws std::invalid_argument on same-parity input.
bool precedes(std::span<const FaceCoord> c, std::span<const FaceCoord> c_prime);

struct NestedClusterSequence {
    std::vector<std::vector<FaceCoord>> clusters;  // C_0 primal, then alternating
    std::vector<int> interface_loops;              // L_n between C_{n-1} and C_n
    std::vector<int> heights;                      // h(C_n)
    std::vector<int> increments;                   // xi_{L_n}
    bool reached_boundary = false;
};

// Builds C_0 (the primal cluster of cfg containing o) and successive
// surrounding clusters until one touches the boundary of the domain. olc
// must orient the loops of cfg. Throws std::logic_error if the increment
// law h(C_n) - h(C_{n-1}) = xi_{L_n} fails or a cluster is not level.
NestedClusterSequence nested_sequence(const BondConfig& cfg, const OrientedLoopConfig& olc, FaceCoord o);

struct DriftOptions {
    double q = 10.0;
    double lambda = 0.0;
    int box = 64;
    int samples = 200;
    int chains = 8;
    int burn_in = 200;
    int thin = 5;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct DriftRow {
    int sample = 0;
    int n = 0;
    int xi = 0;
    int height = 0;
};

struct DriftResult {
    DriftOptions options;
    FKParams params;
    std::vector<DriftRow> rows;
    std::uint64_t count = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double tanh_lambda = 0.0;
    double mean_sequence_length = 0.0;
};

// Samples the coupled random-cluster measure (p_c(q), q, q_b = e^lambda sqrt q)
// with independent heat-bath chains, orients loops with the keyed coins and
// pools the increments of the nested sequence around the central face.
DriftResult drift_experiment(const DriftOptions& options);

}  // namespace bkw
