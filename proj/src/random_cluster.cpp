#include "bkw/random_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bkw {

void FKParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("edge weight p must lie in (0,1)");
    if (!(q > 0.0)) throw std::invalid_argument("cluster weight q must be positive");
    if (!(q_b > 0.0)) throw std::invalid_argument("boundary cluster weight q_b must be positive");
}

void RationalFKParams::validate() const {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("edge weight p must lie in (0,1)");
    if (!(q > 0)) throw std::invalid_argument("cluster weight q must be positive");
    if (!(q_b > 0)) throw std::invalid_argument("boundary cluster weight q_b must be positive");
}

double critical_p(double q) {
    if (!(q > 0.0)) throw std::invalid_argument("cluster weight q must be positive");
    const double s = std::sqrt(q);
    return s / (1.0 + s);
}

SymbolicFKParams SymbolicFKParams::coupled(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("coupling sign must be +1 or -1");
    const Laurent sqrt_q = Laurent::monomial(2) + Laurent::monomial(-2);
    return {sqrt_q, sqrt_q * sqrt_q, sqrt_q.shifted(2 * sign)};
}

BondConfig BondConfig::from_bits(const Domain& d, std::uint64_t bits) {
    BondConfig cfg(d);
    for (std::size_t e = 0; e < cfg.open.size(); ++e) cfg.open[e] = (bits >> e) & 1u;
    return cfg;
}

int BondConfig::open_count() const {
    return static_cast<int>(std::count(open.begin(), open.end(), std::uint8_t{1}));
}

DisjointSets::DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
        auto& px = parent_[static_cast<std::size_t>(x)];
        px = parent_[static_cast<std::size_t>(px)];
        x = px;
    }
    return x;
}

bool DisjointSets::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) ++rank_[static_cast<std::size_t>(a)];
    return true;
}

namespace {

std::vector<int> relabel(DisjointSets& sets, int n) {
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<int> root_label(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        const int r = sets.find(v);
        if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = next++;
        label[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
    }
    return label;
}

const Domain& domain_of(const BondConfig& cfg) {
    if (cfg.domain == nullptr) throw std::invalid_argument("bond configuration has no domain");
    if (cfg.open.size() != cfg.domain->primal_edges().size())
        throw std::invalid_argument("bond configuration size does not match its domain");
    return *cfg.domain;
}

}  // namespace

std::vector<int> primal_cluster_labels(const BondConfig& cfg) {
    const Domain& d = domain_of(cfg);
    const int n = static_cast<int>(d.vertices().size());
    DisjointSets sets(n);
    const auto edges = d.primal_edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (cfg.open[e]) sets.unite(edges[e].u, edges[e].v);
    return relabel(sets, n);
}

std::vector<int> dual_cluster_labels(const BondConfig& cfg) {
    const Domain& d = domain_of(cfg);
    const int n = d.outer_dual_vertex() + 1;
    DisjointSets sets(n);
    const auto edges = d.dual_edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (cfg.dual_open(static_cast<int>(e))) sets.unite(edges[e].x, edges[e].y);
    return relabel(sets, n);
}

ClusterStats cluster_stats(const BondConfig& cfg) {
    const Domain& d = domain_of(cfg);
    ClusterStats s;
    s.o = cfg.open_count();
    s.c = static_cast<int>(cfg.open.size()) - s.o;

    const auto labels = primal_cluster_labels(cfg);
    const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::uint8_t> touches(static_cast<std::size_t>(k), 0);
    for (std::size_t v = 0; v < labels.size(); ++v)
        if (d.is_boundary_vertex(static_cast<int>(v))) touches[static_cast<std::size_t>(labels[v])] = 1;
    s.k_b = static_cast<int>(std::count(touches.begin(), touches.end(), std::uint8_t{1}));
    s.k_i = k - s.k_b;

    const auto dual = dual_cluster_labels(cfg);
    s.k_dual = dual.empty() ? 0 : *std::max_element(dual.begin(), dual.end()) + 1;
    return s;
}

double fk_weight(const BondConfig& cfg, const FKParams& params) {
    params.validate();
    const auto s = cluster_stats(cfg);
    return std::pow(params.p, s.o) * std::pow(1.0 - params.p, s.c) * std::pow(params.q, s.k_i) *
           std::pow(params.q_b, s.k_b);
}

namespace {

template <typename T>
T power(T base, int n) {
    T out = 1;
    for (int k = 0; k < n; ++k) out *= base;
    return out;
}

}  // namespace

mpq_class fk_weight(const BondConfig& cfg, const RationalFKParams& params) {
    params.validate();
    const auto s = cluster_stats(cfg);
    return power<mpq_class>(params.p, s.o) * power<mpq_class>(1 - params.p, s.c) *
           power<mpq_class>(params.q, s.k_i) * power<mpq_class>(params.q_b, s.k_b);
}

Laurent fk_weight(const BondConfig& cfg, const SymbolicFKParams& params) {
    if (params.odds.is_zero() || params.q.is_zero() || params.q_b.is_zero())
        throw std::invalid_argument("symbolic FK parameters must be nonzero Laurent data");
    const auto s = cluster_stats(cfg);
    return params.odds.pow(static_cast<unsigned>(s.o)) * params.q.pow(static_cast<unsigned>(s.k_i)) *
           params.q_b.pow(static_cast<unsigned>(s.k_b));
}

namespace {

double conditional_from_case(int which, const FKParams& params) {
    const double p = params.p;
    if (which == 0) return p;
    if (which == 1) return p / (p + params.q_b * (1.0 - p));
    return p / (p + params.q * (1.0 - p));
}


}  // namespace

HeatBathProbe::HeatBathProbe(const Domain& d) : domain_(d) {
    const auto n = d.vertices().size();
    offsets_.assign(n + 1, 0);
    for (const auto& e : d.primal_edges()) {
        ++offsets_[static_cast<std::size_t>(e.u) + 1];
        ++offsets_[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t k = 0; k < n; ++k) offsets_[k + 1] += offsets_[k];
    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    const auto edges = d.primal_edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adjacency_[fill[static_cast<std::size_t>(edges[e].u)]++] = {edges[e].v, static_cast<int>(e)};
        adjacency_[fill[static_cast<std::size_t>(edges[e].v)]++] = {edges[e].u, static_cast<int>(e)};
    }
    mark_.assign(n, 0);
    queue_[0].reserve(n);
    queue_[1].reserve(n);
}

// The two searches advance alternately so the cost is governed by the
// smaller side.
int HeatBathProbe::classify(const BondConfig& cfg, int edge) {
    const auto& pe = domain_.primal_edges()[static_cast<std::size_t>(edge)];
    if (epoch_ > 0xfffffff0u) {
        std::fill(mark_.begin(), mark_.end(), 0u);
        epoch_ = 0;
    }
    epoch_ += 2;
    const std::uint32_t tag[2] = {epoch_, epoch_ + 1};
    const int start[2] = {pe.u, pe.v};
    bool boundary[2] = {false, false};
    std::size_t head[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
        queue_[s].clear();
        queue_[s].push_back(start[s]);
        mark_[static_cast<std::size_t>(start[s])] = tag[s];
        boundary[s] = domain_.is_boundary_vertex(start[s]);
    }
    bool exhausted[2] = {false, false};
    while (true) {
        for (int s = 0; s < 2; ++s) {
            if (exhausted[s]) continue;
            if (head[s] == queue_[s].size()) {
                exhausted[s] = true;
                if (!boundary[s]) return 2;
                continue;
            }
            // Once the other side is exhausted, only this side's boundary flag matters.
            if (exhausted[1 - s] && boundary[s]) return 1;
            const int x = queue_[s][head[s]++];
            for (std::size_t k = offsets_[static_cast<std::size_t>(x)]; k < offsets_[static_cast<std::size_t>(x) + 1];
                 ++k) {
                const auto [y, e] = adjacency_[k];
                if (e == edge || !cfg.open[static_cast<std::size_t>(e)]) continue;
                auto& m = mark_[static_cast<std::size_t>(y)];
                if (m == tag[1 - s]) return 0;
                if (m == tag[s]) continue;
                m = tag[s];
                if (domain_.is_boundary_vertex(y)) boundary[s] = true;
                queue_[s].push_back(y);
            }
        }
        if (exhausted[0] && exhausted[1]) return (boundary[0] && boundary[1]) ? 1 : 2;
    }
}

double HeatBathProbe::conditional(const BondConfig& cfg, int edge, const FKParams& params) {
    return conditional_from_case(classify(cfg, edge), params);
}

void HeatBathProbe::sweep(BondConfig& cfg, const FKParams& params, ChainRng& rng) {
    for (std::size_t e = 0; e < cfg.open.size(); ++e)
        cfg.open[e] = rng.uniform() < conditional(cfg, static_cast<int>(e), params) ? 1 : 0;
}

double heat_bath_conditional(const BondConfig& cfg, int edge, const FKParams& params) {
    const Domain& d = domain_of(cfg);
    params.validate();
    if (edge < 0 || edge >= static_cast<int>(cfg.open.size())) throw std::out_of_range("edge index");
    const int n = static_cast<int>(d.vertices().size());
    DisjointSets sets(n);
    const auto edges = d.primal_edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (cfg.open[e] && static_cast<int>(e) != edge) sets.unite(edges[e].u, edges[e].v);
    std::vector<std::uint8_t> touches(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (d.is_boundary_vertex(v)) touches[static_cast<std::size_t>(sets.find(v))] = 1;
    const auto& pe = edges[static_cast<std::size_t>(edge)];
    const int ru = sets.find(pe.u);
    const int rv = sets.find(pe.v);
    int which = 2;
    if (ru == rv) which = 0;
    else if (touches[static_cast<std::size_t>(ru)] && touches[static_cast<std::size_t>(rv)]) which = 1;
    return conditional_from_case(which, params);
}

void heat_bath_sweep(BondConfig& cfg, const FKParams& params, ChainRng& rng) {
    params.validate();
    HeatBathProbe probe(domain_of(cfg));
    probe.sweep(cfg, params, rng);
}

std::vector<double> fk_distribution(const Domain& domain, const FKParams& params, int max_edges) {
    const int n = static_cast<int>(domain.primal_edges().size());
    if (n > max_edges) throw std::length_error("enumeration budget exceeded");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> w(count);
    double total = 0.0;
    for (std::uint64_t s = 0; s < count; ++s) {
        w[s] = fk_weight(BondConfig::from_bits(domain, s), params);
        total += w[s];
    }
    for (auto& x : w) x /= total;
    return w;
}

std::vector<std::vector<double>> sweep_transition_matrix(const Domain& domain, const FKParams& params,
                                                         int max_edges) {
    params.validate();
    const int n = static_cast<int>(domain.primal_edges().size());
    if (n > max_edges) throw std::length_error("enumeration budget exceeded");
    const std::uint64_t count = std::uint64_t{1} << n;
    // cond[s][e]: probability edge e is open after resampling it from state s.
    std::vector<std::vector<double>> cond(count, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::uint64_t s = 0; s < count; ++s) {
        const auto cfg = BondConfig::from_bits(domain, s);
        for (int e = 0; e < n; ++e) cond[s][static_cast<std::size_t>(e)] = heat_bath_conditional(cfg, e, params);
    }
    std::vector<std::vector<double>> matrix(count, std::vector<double>(count, 0.0));
    for (std::uint64_t from = 0; from < count; ++from) {
        std::vector<double> dist(count, 0.0);
        dist[from] = 1.0;
        for (int e = 0; e < n; ++e) {
            std::vector<double> next(count, 0.0);
            const std::uint64_t bit = std::uint64_t{1} << e;
            for (std::uint64_t s = 0; s < count; ++s) {
                if (dist[s] == 0.0) continue;
                const double po = cond[s][static_cast<std::size_t>(e)];
                next[s | bit] += dist[s] * po;
                next[s & ~bit] += dist[s] * (1.0 - po);
            }
            dist = std::move(next);
        }
        matrix[from] = std::move(dist);
    }
    return matrix;
}

HolleyResult holley_check(const FKParams& lo, const FKParams& hi, const Domain& domain, int max_edges,
                          double rel_tol) {
    const auto wl = fk_distribution(domain, lo, max_edges);
    const auto wh = fk_distribution(domain, hi, max_edges);
    HolleyResult r;
    r.worst_slack = 1.0;
    const std::uint64_t count = wl.size();
    for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = 0; b < count; ++b) {
            const double lhs = wh[a | b] * wl[a & b];
            const double rhs = wl[a] * wh[b];
            const double scale = std::max(lhs, rhs);
            const double slack = scale > 0.0 ? (lhs - rhs) / scale : 0.0;
            ++r.pairs_checked;
            if (slack < r.worst_slack) r.worst_slack = slack;
            if (slack < -rel_tol && r.holds) {
                r.holds = false;
                r.witness_a = a;
                r.witness_b = b;
            }
        }
    }
    return r;
}

HolleyResult holley_check(const RationalFKParams& lo, const RationalFKParams& hi, const Domain& domain,
                          int max_edges) {
    lo.validate();
    hi.validate();
    const int n = static_cast<int>(domain.primal_edges().size());
    if (n > max_edges) throw std::length_error("enumeration budget exceeded");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<mpq_class> wl(count), wh(count);
    for (std::uint64_t s = 0; s < count; ++s) {
        const auto cfg = BondConfig::from_bits(domain, s);
        wl[s] = fk_weight(cfg, lo);
        wh[s] = fk_weight(cfg, hi);
    }
    HolleyResult r;
    r.worst_slack = 1.0;
    for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = 0; b < count; ++b) {
            const mpq_class lhs = wh[a | b] * wl[a & b];
            const mpq_class rhs = wl[a] * wh[b];
            ++r.pairs_checked;
            const mpq_class scale = lhs > rhs ? lhs : rhs;
            const double slack = scale > 0 ? mpq_class((lhs - rhs) / scale).get_d() : 0.0;
            if (slack < r.worst_slack) r.worst_slack = slack;
            if (lhs < rhs && r.holds) {
                r.holds = false;
                r.witness_a = a;
                r.witness_b = b;
            }
        }
    }
    return r;
}

bool connected_to_boundary(const BondConfig& cfg, int vertex) {
    const Domain& d = domain_of(cfg);
    const auto labels = primal_cluster_labels(cfg);
    const int target = labels[static_cast<std::size_t>(vertex)];
    for (std::size_t v = 0; v < labels.size(); ++v)
        if (labels[v] == target && d.is_boundary_vertex(static_cast<int>(v))) return true;
    return false;
}

int central_vertex(const Domain& domain) {
    const auto vs = domain.vertices();
    double ci = 0.0, cj = 0.0;
    for (const auto& f : vs) {
        ci += f.i;
        cj += f.j;
    }
    ci /= static_cast<double>(vs.size());
    cj /= static_cast<double>(vs.size());
    int best = 0;
    double best_dist = 1e300;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double dist = std::abs(vs[k].i - ci) + std::abs(vs[k].j - cj);
        if (dist < best_dist - 1e-12) {
            best_dist = dist;
            best = static_cast<int>(k);
        }
    }
    return best;
}

SamplerReport run_sampler(const Domain& domain, const FKParams& params, int sweeps, int burn_in,
                          std::uint64_t seed, bool start_open, int origin_vertex) {
    params.validate();
    if (sweeps < 0 || burn_in < 0) throw std::invalid_argument("sweep counts must be nonnegative");
    SamplerReport rep;
    rep.seed = seed;
    rep.sweeps = sweeps;
    rep.burn_in = burn_in;
    rep.params = params;
    rep.origin_vertex = origin_vertex < 0 ? central_vertex(domain) : origin_vertex;
    rep.edge_marginals.assign(domain.primal_edges().size(), 0.0);
    rep.cluster_size_histogram.assign(domain.vertices().size() + 1, 0);

    BondConfig cfg(domain, start_open);
    ChainRng rng(seed, Stream::EdgeCoin, 0);
    HeatBathProbe probe(domain);
    int measured = 0;
    int connected = 0;
    for (int sweep = 0; sweep < burn_in + sweeps; ++sweep) {
        probe.sweep(cfg, params, rng);
        if (sweep < burn_in) continue;
        ++measured;
        for (std::size_t e = 0; e < cfg.open.size(); ++e) rep.edge_marginals[e] += cfg.open[e];
        const auto labels = primal_cluster_labels(cfg);
        std::vector<int> sizes(labels.size(), 0);
        for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
        for (int s : sizes)
            if (s > 0) ++rep.cluster_size_histogram[static_cast<std::size_t>(s)];
        if (connected_to_boundary(cfg, rep.origin_vertex)) ++connected;
    }
    if (measured > 0) {
        for (auto& m : rep.edge_marginals) m /= measured;
        rep.origin_boundary_frequency = static_cast<double>(connected) / measured;
    }
    return rep;
}

}  // namespace bkw
