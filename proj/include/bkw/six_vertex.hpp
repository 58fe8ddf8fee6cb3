#pragma once

#include "bkw/lattice.hpp"
#include "bkw/laurent.hpp"
#include "bkw/loops.hpp"
#include "bkw/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bkw {

// Arrow configuration on the medial edges of an even domain. arrow[e] is 1
// when edge e points in its positive axis direction (east or north).
struct SixVertexConfig {
    const Domain* domain = nullptr;
    std::vector<std::uint8_t> arrow;
};

// Vertex types by the directions the incoming arrows arrive from:
//   1: W,S   2: E,N   3: W,N   4: E,S   5: E,W   6: N,S
// Types 5 and 6 are the ones with collinear incoming arrows.
int vertex_type(const SixVertexConfig& cfg, int medial_vertex);
std::vector<int> vertex_types(const SixVertexConfig& cfg);  // per internal vertex
int count_c_vertices(const SixVertexConfig& cfg);

// Ice rule at every internal vertex and anticlockwise boundary cycle.
bool is_valid(const SixVertexConfig& cfg);
// Human-readable reason when invalid, empty otherwise.
std::string validation_error(const SixVertexConfig& cfg);

// The non-crossing ways to join two incoming and two outgoing arrows into
// strands at a vertex of the given type, derived by discarding the crossing
// matching. Each entry carries its diagonal pairing and the total turning of
// the two strands in quarter turns.
struct SplitOption {
    Diagonal pairing;
    int turn = 0;  // 0 for types 1-4, +2 (anticlockwise) or -2 (clockwise) for 5/6
};
const std::vector<SplitOption>& split_options(int type);

struct EnumerationOptions {
    int max_free_edges = 64;
    int partition_count = 1;
    int partition_index = 0;
};

// Calls `visit` once for every configuration with anticlockwise boundary
// satisfying the ice rule. With partition_count > 1 only this partition's
// share is produced; the union over all partitions is the full set.
// Throws std::length_error when the domain exceeds the budget.
void enumerate_6v(const Domain& domain, const std::function<void(const SixVertexConfig&)>& visit,
                  const EnumerationOptions& options = {});
std::vector<SixVertexConfig> enumerate_6v_all(const Domain& domain, const EnumerationOptions& options = {});

// c^{n56}
double sixv_weight(const SixVertexConfig& cfg, double c);
// (x + 1/x)^{n56}
Laurent sixv_weight(const SixVertexConfig& cfg);

struct CoupledParams {
    double lambda = 0.0;
    double c = 2.0;
    double sqrt_q = 2.0;
    double q = 4.0;
    double p = 2.0 / 3.0;
    double q_b = 2.0;

    static CoupledParams from_lambda(double lambda);
};

// Choices made by a split: per internal vertex (primal edge index) the
// pairing used and its turn.
struct SplitRecord {
    std::vector<Diagonal> pairing;
    std::vector<int> turn;
    int anticlockwise = 0;
    int clockwise = 0;
};

struct SplitResult {
    OrientedLoopConfig loops;
    SplitRecord record;
};

// Split with explicit choices at type-5/6 vertices: choice[v] true selects
// the anticlockwise split at internal vertex v (ignored elsewhere).
SplitResult split_with_choices(const SixVertexConfig& cfg, const std::vector<bool>& choice);
// Randomized split; the coin at internal vertex v is coins.uniform(v) and
// selects the anticlockwise split with probability e^{lambda/2}/c.
SplitResult split(const SixVertexConfig& cfg, double lambda, const KeyedStream& coins);

SixVertexConfig split_inverse(const OrientedLoopConfig& olc);

// 2 (N_acw_split - N_cw_split) + n2 == 4 (N_acw_loops - N_cw_loops),
// all angles in quarter turns.
bool check_winding_identity(const OrientedLoopConfig& olc, const SplitRecord& record);

// Indices of type-5/6 internal vertices.
std::vector<int> c_vertices(const SixVertexConfig& cfg);

// Canonical keys: one character per medial edge ('0'/'1'); oriented loop
// keys prepend one character per internal vertex for the pairing.
std::string arrow_key(const SixVertexConfig& cfg);
std::string oriented_key(const OrientedLoopConfig& olc);

}  // namespace bkw
