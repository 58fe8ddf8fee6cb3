#pragma once

#include "bkw/lattice.hpp"
#include "bkw/laurent.hpp"
#include "bkw/six_vertex.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bkw {

// Unnormalized weights over canonical configuration keys.
template <class W>
struct FiniteDistribution {
    std::map<std::string, W> weights;

    void add(const std::string& key, const W& w) {
        auto [it, inserted] = weights.try_emplace(key, w);
        if (!inserted) it->second += w;
    }
    void merge(const FiniteDistribution& other) {
        for (const auto& [k, w] : other.weights) add(k, w);
    }
    W total() const {
        W z = 0;
        for (const auto& [k, w] : weights) z += w;
        return z;
    }
    std::size_t size() const { return weights.size(); }
};

using SymbolicDistribution = FiniteDistribution<Laurent>;
using FloatDistribution = FiniteDistribution<double>;

struct VerifyOptions {
    int max_fk_edges = 14;
    int max_c_vertices = 20;
    int workers = 1;
};

// Symbolic oriented random-cluster measure at p_c with q_b = e^{sign lambda} sqrt q,
// keyed by oriented loop configuration. Weight of (omega, xi):
// odds^o q^{k_i} q_b^{k_b} prod_{internal L} x^{2 sign xi_L} / sqrt(q).
SymbolicDistribution oriented_fk_distribution(const Domain& domain, int sign, const VerifyOptions& options = {});

// Six-vertex measure c^{n56}, c = x + 1/x, keyed by arrow configuration.
SymbolicDistribution sixv_distribution(const Domain& domain, const VerifyOptions& options = {});

// Split(sign lambda) applied to the six-vertex measure, keyed by oriented
// loop configuration. Each (config, outcome) contributes x^{sign (n_acw - n_cw)}.
SymbolicDistribution pushforward_6v_to_fk(const Domain& domain, int sign, const VerifyOptions& options = {});

// Split^{-1} applied to the oriented random-cluster measure, keyed by arrows.
SymbolicDistribution pushforward_fk_to_6v(const Domain& domain, int sign, const VerifyOptions& options = {});

// Re-keys an oriented-loop distribution by the arrows of each configuration.
SymbolicDistribution project_to_arrows(const SymbolicDistribution& oriented);
FloatDistribution project_to_arrows(const FloatDistribution& oriented);

SymbolicDistribution substitute_inverse(const SymbolicDistribution& d);

// Float counterparts at a given lambda.
FloatDistribution oriented_fk_distribution_float(const Domain& domain, double lambda, const VerifyOptions& options = {});
FloatDistribution pushforward_6v_to_fk_float(const Domain& domain, double lambda, const VerifyOptions& options = {});
FloatDistribution evaluate(const SymbolicDistribution& d, double x);

struct ComparisonReport {
    bool equal = true;
    double max_discrepancy = 0.0;  // largest relative difference of probabilities
    std::string witness;           // first key that differs
    std::string witness_detail;
    std::size_t support_a = 0;
    std::size_t support_b = 0;
};

// Exact: w1(k) Z2 == w2(k) Z1 for every key of either support.
ComparisonReport compare_distributions(const SymbolicDistribution& a, const SymbolicDistribution& b);
// Relative tolerance on cross-multiplied weights.
ComparisonReport compare_distributions(const FloatDistribution& a, const FloatDistribution& b, double rel_tol = 1e-10);

// lambda = arccosh(sqrt(q)/2) >= 0 with c, p_c and q_b = e^lambda sqrt q.
// Throws std::invalid_argument for q < 4 and std::logic_error if c^2 != 2 + sqrt q
// or either boundary weight e^{+-lambda} sqrt q leaves [1, q].
CoupledParams verify_coupled_params(double q);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    std::string witness;
    double seconds = 0.0;
};

struct VerificationReport {
    std::string domain;
    std::vector<CheckResult> checks;
    bool passed() const;
};

enum class Backend { Symbolic, Float };

struct CouplingCheckOptions {
    Backend backend = Backend::Symbolic;
    std::vector<double> lambdas{0.5, 1.0};  // float backend and agreement checks
    VerifyOptions verify;
};

// Measure preservation of Split for both signs, the lambda <-> -lambda
// symmetry of the six-vertex pushforward, its weight form, consistency of
// the two directions and (symbolic backend) the coupled-parameter relations.
VerificationReport verify_coupling(const Domain& domain, const CouplingCheckOptions& options = {});

struct IdentityCheckOptions {
    int max_fk_edges = 14;
    int random_pairs = 0;  // extra random (config, outcome) pairs for the winding identity
    std::uint64_t seed = 1;
};

// Euler relations, winding identity, split round trip, height oracle equivalence.
VerificationReport verify_identities(const Domain& domain, const IdentityCheckOptions& options = {});

// Individual exhaustive checks, returning the number of failures.
std::uint64_t count_euler_failures(const Domain& domain, std::uint64_t* checked = nullptr, int max_edges = 14);
std::uint64_t count_winding_failures(const Domain& domain, std::uint64_t* checked = nullptr, int max_c_vertices = 20);
// Random (config, outcome) pairs drawn from random bond configurations and orientations.
std::uint64_t count_winding_failures_random(const Domain& domain, int pairs, std::uint64_t seed);
std::uint64_t count_height_mismatches(const Domain& domain, std::uint64_t* checked = nullptr, int max_edges = 14);
// Random bond configurations with random orientations on a large domain.
std::uint64_t count_height_mismatches_random(const Domain& domain, int samples, std::uint64_t seed);

}  // namespace bkw
