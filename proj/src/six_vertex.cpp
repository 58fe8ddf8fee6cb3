#include "bkw/six_vertex.hpp"

#include <cmath>
#include <stdexcept>

namespace bkw {

namespace {

constexpr int bit(Dir d) { return 1 << static_cast<int>(d); }

const Domain& require_domain(const Domain* d) {
    if (d == nullptr) throw std::invalid_argument("six-vertex configuration has no domain");
    if (!d->is_even()) throw std::invalid_argument("six-vertex model needs an even domain");
    return *d;
}

// Bitmask of the directions whose edge carries an arrow into the vertex.
int incoming_mask(const SixVertexConfig& cfg, const MedialVertex& mv) {
    int mask = 0;
    for (int d = 0; d < 4; ++d) {
        const int e = mv.edge_at[static_cast<std::size_t>(d)];
        if (e < 0) continue;
        const EdgeRef r = edge_toward(mv.point, static_cast<Dir>(d));
        const bool outgoing = (cfg.arrow[static_cast<std::size_t>(e)] != 0) == r.forward;
        if (!outgoing) mask |= 1 << d;
    }
    return mask;
}

int type_of_mask(int in) {
    using enum Dir;
    if (in == (bit(W) | bit(S))) return 1;
    if (in == (bit(E) | bit(N))) return 2;
    if (in == (bit(W) | bit(N))) return 3;
    if (in == (bit(E) | bit(S))) return 4;
    if (in == (bit(E) | bit(W))) return 5;
    if (in == (bit(N) | bit(S))) return 6;
    return 0;
}

std::vector<std::vector<SplitOption>> build_split_rules() {
    std::vector<std::vector<SplitOption>> rules(7);
    for (int mask = 0; mask < 16; ++mask) {
        const int t = type_of_mask(mask);
        if (t == 0) continue;
        std::vector<Dir> in, out;
        for (int d = 0; d < 4; ++d) (mask & (1 << d) ? in : out).push_back(static_cast<Dir>(d));
        for (int swap = 0; swap < 2; ++swap) {
            const Dir a = out[static_cast<std::size_t>(swap)];
            const Dir b = out[static_cast<std::size_t>(1 - swap)];
            for (Diagonal g : {Diagonal::NeSw, Diagonal::NwSe}) {
                if (partner(in[0], g) != a || partner(in[1], g) != b) continue;
                const int turn = quarter_turn(opposite(in[0]), a) + quarter_turn(opposite(in[1]), b);
                rules[static_cast<std::size_t>(t)].push_back({g, turn});
            }
        }
        const auto& r = rules[static_cast<std::size_t>(t)];
        const bool c_type = t >= 5;
        if (r.size() != (c_type ? 2u : 1u)) throw std::logic_error("unexpected number of non-crossing splits");
        for (const auto& o : r) {
            if (!c_type && o.turn != 0) throw std::logic_error("split of a type 1-4 vertex must not turn");
            if (c_type && o.turn != 2 && o.turn != -2) throw std::logic_error("split of a c-vertex must turn by pi");
        }
        if (c_type && r[0].turn == r[1].turn) throw std::logic_error("c-vertex splits must turn oppositely");
    }
    return rules;
}

}  // namespace

int vertex_type(const SixVertexConfig& cfg, int medial_vertex) {
    const Domain& domain = require_domain(cfg.domain);
    const auto& mv = domain.medial_vertices()[static_cast<std::size_t>(medial_vertex)];
    return type_of_mask(incoming_mask(cfg, mv));
}

std::vector<int> vertex_types(const SixVertexConfig& cfg) {
    const Domain& domain = require_domain(cfg.domain);
    std::vector<int> types;
    types.reserve(domain.primal_edges().size());
    for (const auto& pe : domain.primal_edges()) types.push_back(vertex_type(cfg, pe.medial_vertex));
    return types;
}

int count_c_vertices(const SixVertexConfig& cfg) {
    int n = 0;
    for (int t : vertex_types(cfg)) n += t >= 5 ? 1 : 0;
    return n;
}

std::vector<int> c_vertices(const SixVertexConfig& cfg) {
    std::vector<int> out;
    const auto types = vertex_types(cfg);
    for (std::size_t v = 0; v < types.size(); ++v)
        if (types[v] >= 5) out.push_back(static_cast<int>(v));
    return out;
}

std::string validation_error(const SixVertexConfig& cfg) {
    if (cfg.domain == nullptr) return "no domain";
    const Domain& domain = *cfg.domain;
    if (!domain.is_even()) return "domain is not even";
    if (cfg.arrow.size() != domain.medial_edges().size()) return "arrow count does not match medial edges";
    const auto cycle = domain.boundary_cycle();
    const auto fwd = domain.boundary_forward();
    for (std::size_t k = 0; k < cycle.size(); ++k)
        if (cfg.arrow[static_cast<std::size_t>(cycle[k])] != fwd[k])
            return "boundary edge " + std::to_string(cycle[k]) + " is not anticlockwise";
    for (const auto& pe : domain.primal_edges()) {
        const auto& mv = domain.medial_vertices()[static_cast<std::size_t>(pe.medial_vertex)];
        if (type_of_mask(incoming_mask(cfg, mv)) == 0)
            return "ice rule fails at medial vertex (" + std::to_string(mv.point.a) + "," +
                   std::to_string(mv.point.b) + ")";
    }
    return {};
}

bool is_valid(const SixVertexConfig& cfg) { return validation_error(cfg).empty(); }

const std::vector<SplitOption>& split_options(int type) {
    static const auto rules = build_split_rules();
    if (type < 1 || type > 6) throw std::invalid_argument("vertex type must be 1..6");
    return rules[static_cast<std::size_t>(type)];
}

void enumerate_6v(const Domain& domain, const std::function<void(const SixVertexConfig&)>& visit,
                  const EnumerationOptions& options) {
    require_domain(&domain);
    if (options.partition_count < 1 || options.partition_index < 0 ||
        options.partition_index >= options.partition_count)
        throw std::invalid_argument("bad enumeration partition");
    const auto medial = domain.medial_edges();
    SixVertexConfig cfg{&domain, std::vector<std::uint8_t>(medial.size(), 0)};
    std::vector<std::uint8_t> fixed(medial.size(), 0);
    const auto cycle = domain.boundary_cycle();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        cfg.arrow[static_cast<std::size_t>(cycle[k])] = domain.boundary_forward()[k];
        fixed[static_cast<std::size_t>(cycle[k])] = 1;
    }
    std::vector<int> free_edges;
    for (std::size_t e = 0; e < medial.size(); ++e)
        if (!fixed[e]) free_edges.push_back(static_cast<int>(e));
    if (static_cast<int>(free_edges.size()) > options.max_free_edges)
        throw std::length_error("domain has " + std::to_string(free_edges.size()) +
                                " free medial edges, budget is " + std::to_string(options.max_free_edges));

    // Per medial vertex: incoming/outgoing counts over assigned edges.
    const auto vertices = domain.medial_vertices();
    std::vector<int> in(vertices.size(), 0), out(vertices.size(), 0);
    std::vector<int> start_vertex(medial.size()), end_vertex(medial.size());
    for (std::size_t e = 0; e < medial.size(); ++e) {
        start_vertex[e] = domain.medial_vertex_index(medial[e].start);
        end_vertex[e] = domain.medial_vertex_index(medial[e].end());
    }
    auto apply = [&](std::size_t e, int delta) {
        const bool positive = cfg.arrow[e] != 0;
        const int tail = positive ? start_vertex[e] : end_vertex[e];
        const int head = positive ? end_vertex[e] : start_vertex[e];
        out[static_cast<std::size_t>(tail)] += delta;
        in[static_cast<std::size_t>(head)] += delta;
    };
    for (std::size_t e = 0; e < medial.size(); ++e)
        if (fixed[e]) apply(e, 1);
    for (std::size_t m = 0; m < vertices.size(); ++m)
        if (vertices[m].internal && (in[m] > 2 || out[m] > 2)) return;

    int prefix_depth = 0;
    while ((1 << prefix_depth) < options.partition_count && prefix_depth < static_cast<int>(free_edges.size()))
        ++prefix_depth;

    auto ok = [&](std::size_t e) {
        for (int m : {start_vertex[e], end_vertex[e]}) {
            const auto mi = static_cast<std::size_t>(m);
            if (vertices[mi].internal && (in[mi] > 2 || out[mi] > 2)) return false;
        }
        return true;
    };

    std::function<void(std::size_t, std::uint64_t)> recurse = [&](std::size_t depth, std::uint64_t prefix) {
        if (static_cast<int>(depth) == prefix_depth && options.partition_count > 1 &&
            static_cast<int>(prefix % static_cast<std::uint64_t>(options.partition_count)) != options.partition_index)
            return;
        if (depth == free_edges.size()) {
            visit(cfg);
            return;
        }
        const auto e = static_cast<std::size_t>(free_edges[depth]);
        for (std::uint8_t a = 0; a < 2; ++a) {
            cfg.arrow[e] = a;
            apply(e, 1);
            if (ok(e)) recurse(depth + 1, static_cast<int>(depth) < prefix_depth ? (prefix << 1) | a : prefix);
            apply(e, -1);
        }
        cfg.arrow[e] = 0;
    };
    recurse(0, 0);
}

std::vector<SixVertexConfig> enumerate_6v_all(const Domain& domain, const EnumerationOptions& options) {
    std::vector<SixVertexConfig> all;
    enumerate_6v(domain, [&](const SixVertexConfig& c) { all.push_back(c); }, options);
    return all;
}

double sixv_weight(const SixVertexConfig& cfg, double c) { return std::pow(c, count_c_vertices(cfg)); }

Laurent sixv_weight(const SixVertexConfig& cfg) {
    const Laurent c = Laurent::monomial(1) + Laurent::monomial(-1);
    return c.pow(static_cast<unsigned>(count_c_vertices(cfg)));
}

CoupledParams CoupledParams::from_lambda(double lambda) {
    CoupledParams cp;
    cp.lambda = lambda;
    cp.c = 2.0 * std::cosh(lambda / 2.0);
    cp.sqrt_q = 2.0 * std::cosh(lambda);
    cp.q = cp.sqrt_q * cp.sqrt_q;
    cp.p = cp.sqrt_q / (1.0 + cp.sqrt_q);
    cp.q_b = std::exp(lambda) * cp.sqrt_q;
    return cp;
}

SplitResult split_with_choices(const SixVertexConfig& cfg, const std::vector<bool>& choice) {
    const Domain& domain = require_domain(cfg.domain);
    const std::string err = validation_error(cfg);
    if (!err.empty()) throw std::invalid_argument("invalid six-vertex configuration: " + err);
    const std::size_t n = domain.primal_edges().size();
    if (choice.size() != n) throw std::invalid_argument("one split choice per internal vertex required");

    SplitRecord record;
    record.pairing.resize(n);
    record.turn.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const int t = vertex_type(cfg, domain.primal_edges()[v].medial_vertex);
        const auto& opts = split_options(t);
        const SplitOption* pick = &opts[0];
        if (opts.size() == 2) {
            const int want = choice[v] ? 2 : -2;
            pick = opts[0].turn == want ? &opts[0] : &opts[1];
            (want > 0 ? record.anticlockwise : record.clockwise) += 1;
        }
        record.pairing[v] = pick->pairing;
        record.turn[v] = pick->turn;
    }

    LoopConfig lc = trace_loops(domain, record.pairing);
    std::vector<std::int8_t> xi(lc.loops.size(), 1);
    for (std::size_t k = 0; k < lc.loops.size(); ++k) {
        const auto& loop = lc.loops[k];
        const bool along = cfg.arrow[static_cast<std::size_t>(loop.edges[0])] == loop.forward[0];
        for (std::size_t t = 0; t < loop.edges.size(); ++t)
            if ((cfg.arrow[static_cast<std::size_t>(loop.edges[t])] == loop.forward[t]) != along)
                throw std::logic_error("split produced a strand against the arrows");
        xi[k] = along ? 1 : -1;
        if (loop.boundary && !along) throw std::logic_error("split produced a clockwise boundary loop");
    }
    return {orient_loops(lc, std::move(xi)), std::move(record)};
}

SplitResult split(const SixVertexConfig& cfg, double lambda, const KeyedStream& coins) {
    const Domain& domain = require_domain(cfg.domain);
    const double p_acw = 1.0 / (1.0 + std::exp(-lambda));
    std::vector<bool> choice(domain.primal_edges().size(), false);
    for (std::size_t v = 0; v < choice.size(); ++v) choice[v] = coins.uniform(v) < p_acw;
    return split_with_choices(cfg, choice);
}

SixVertexConfig split_inverse(const OrientedLoopConfig& olc) {
    return {olc.base.domain, loop_arrows(olc)};
}

bool check_winding_identity(const OrientedLoopConfig& olc, const SplitRecord& record) {
    const Domain& domain = require_domain(olc.base.domain);
    if (record.turn.size() != domain.primal_edges().size()) return false;
    int acw = 0, cw = 0;
    for (int t : record.turn) {
        if (t == 2) ++acw;
        if (t == -2) ++cw;
    }
    if (acw != record.anticlockwise || cw != record.clockwise) return false;
    return 2 * (acw - cw) + domain.n2() == 4 * (olc.anticlockwise() - olc.clockwise());
}

std::string arrow_key(const SixVertexConfig& cfg) {
    std::string key(cfg.arrow.size(), '0');
    for (std::size_t e = 0; e < cfg.arrow.size(); ++e)
        if (cfg.arrow[e]) key[e] = '1';
    return key;
}

std::string oriented_key(const OrientedLoopConfig& olc) {
    std::string key;
    key.reserve(olc.base.pairing.size() + 1);
    for (Diagonal g : olc.base.pairing) key.push_back(g == Diagonal::NeSw ? 'a' : 'b');
    key.push_back(':');
    return key + arrow_key(split_inverse(olc));
}

}  // namespace bkw
