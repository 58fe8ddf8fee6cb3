#pragma once

#include "bkw/lattice.hpp"
#include "bkw/laurent.hpp"
#include "bkw/rng.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace bkw {

// Boundary-weighted random-cluster parameters: edge weight p, cluster weight
// q for clusters away from the boundary, q_b for boundary clusters.
// q_b == q is the free measure, q_b == 1 the wired one.
struct FKParams {
    double p = 0.5;
    double q = 1.0;
    double q_b = 1.0;

    void validate() const;  // throws std::invalid_argument

    static FKParams free(double p, double q) { return {p, q, q}; }
    static FKParams wired(double p, double q) { return {p, q, 1.0}; }
};

double critical_p(double q);

// Exact parameters for rational inputs.
struct RationalFKParams {
    mpq_class p = mpq_class(1, 2);
    mpq_class q = 1;
    mpq_class q_b = 1;

    void validate() const;
};

// Symbolic parameters in x = e^{lambda/2}. The edge weight enters only
// through the odds p/(1-p), so weights are Laurent data up to the
// configuration-independent factor (1-p)^{|E|}.
struct SymbolicFKParams {
    Laurent odds;
    Laurent q;
    Laurent q_b;

    // p = p_c(q), sqrt(q) = x^2 + x^-2, q_b = e^{sign*lambda} sqrt(q).
    // sign must be +1 or -1.
    static SymbolicFKParams coupled(int sign);
};

struct BondConfig {
    const Domain* domain = nullptr;
    std::vector<std::uint8_t> open;  // one entry per primal edge

    BondConfig() = default;
    explicit BondConfig(const Domain& d, bool all_open = false)
        : domain(&d), open(d.primal_edges().size(), all_open ? 1 : 0) {}

    // Configuration with edge e open iff bit e of `bits` is set.
    static BondConfig from_bits(const Domain& d, std::uint64_t bits);

    bool dual_open(int dual_edge) const { return open[static_cast<std::size_t>(dual_edge)] == 0; }
    int open_count() const;
};

struct ClusterStats {
    int o = 0;
    int c = 0;
    int k_i = 0;
    int k_b = 0;
    int k_dual = 0;  // clusters of the dual configuration, outer face wired

    int k() const { return k_i + k_b; }
};

// Union-find over a fixed vertex count.
class DisjointSets {
public:
    explicit DisjointSets(int n);
    int find(int x);
    bool unite(int a, int b);

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

ClusterStats cluster_stats(const BondConfig& cfg);

// Cluster label per primal vertex, labels 0..k-1 in order of first vertex.
std::vector<int> primal_cluster_labels(const BondConfig& cfg);
// Cluster label per dual vertex including the outer vertex (last index).
std::vector<int> dual_cluster_labels(const BondConfig& cfg);

double fk_weight(const BondConfig& cfg, const FKParams& params);
mpq_class fk_weight(const BondConfig& cfg, const RationalFKParams& params);
// Weight divided by (1-p)^{|E|}: odds^o q^{k_i} q_b^{k_b}.
Laurent fk_weight(const BondConfig& cfg, const SymbolicFKParams& params);

// P(edge e open | all other edges), with connectivity taken in cfg without e.
double heat_bath_conditional(const BondConfig& cfg, int edge, const FKParams& params);

// Heat-bath case classifier that avoids rebuilding connectivity per edge:
// two breadth-first searches from the endpoints over open edges. classify()
// returns 0 if the endpoints are joined off the edge, 1 if both reach the
// boundary but not each other, 2 otherwise.
class HeatBathProbe {
public:
    explicit HeatBathProbe(const Domain& d);

    int classify(const BondConfig& cfg, int edge);
    double conditional(const BondConfig& cfg, int edge, const FKParams& params);
    void sweep(BondConfig& cfg, const FKParams& params, ChainRng& rng);

private:
    const Domain& domain_;
    std::vector<std::size_t> offsets_;
    std::vector<std::pair<int, int>> adjacency_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<int> queue_[2];
};

// One single-edge heat-bath sweep, edges in ascending index order.
void heat_bath_sweep(BondConfig& cfg, const FKParams& params, ChainRng& rng);

// Exact one-sweep transition matrix over all 2^|E| configurations (row
// stochastic, rows/cols indexed by the bit encoding of from_bits).
std::vector<std::vector<double>> sweep_transition_matrix(const Domain& domain, const FKParams& params,
                                                         int max_edges = 12);

// Normalized FK probabilities over all 2^|E| configurations.
std::vector<double> fk_distribution(const Domain& domain, const FKParams& params, int max_edges = 20);

struct HolleyResult {
    bool holds = true;
    std::uint64_t witness_a = 0;  // first failing pair (bit encodings)
    std::uint64_t witness_b = 0;
    double worst_slack = 0.0;      // min of (lhs - rhs) / max(lhs, rhs)
    std::uint64_t pairs_checked = 0;
};

// Holley lattice condition mu_hi(a|b) mu_lo(a&b) >= mu_lo(a) mu_hi(b) for all
// pairs; a float tolerance of `rel_tol` relative to the larger side is allowed.
HolleyResult holley_check(const FKParams& lo, const FKParams& hi, const Domain& domain,
                          int max_edges = 14, double rel_tol = 1e-12);
// Exact version.
HolleyResult holley_check(const RationalFKParams& lo, const RationalFKParams& hi, const Domain& domain,
                          int max_edges = 14);

// Whether primal vertex v is joined to the boundary of the domain.
bool connected_to_boundary(const BondConfig& cfg, int vertex);

struct SamplerReport {
    std::uint64_t seed = 0;
    int sweeps = 0;
    int burn_in = 0;
    FKParams params;
    std::vector<double> edge_marginals;
    std::vector<std::uint64_t> cluster_size_histogram;  // index = cluster size
    double origin_boundary_frequency = 0.0;              // finite-box proxy
    int origin_vertex = -1;
};

// Runs one chain from the given start, measuring after every sweep past burn-in.
SamplerReport run_sampler(const Domain& domain, const FKParams& params, int sweeps, int burn_in,
                          std::uint64_t seed, bool start_open, int origin_vertex);

// Vertex of the domain closest to the center of its bounding box.
int central_vertex(const Domain& domain);

}  // namespace bkw
