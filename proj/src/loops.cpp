#include "bkw/loops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bkw {

namespace {

Dir heading_of(const MedialEdge& e, bool forward) {
    if (e.axis == Axis::Horizontal) return forward ? Dir::E : Dir::W;
    return forward ? Dir::N : Dir::S;
}

const Domain& require_domain(const Domain* d) {
    if (d == nullptr) throw std::invalid_argument("loop configuration has no domain");
    if (!d->is_even()) throw std::invalid_argument("loop representation needs an even domain");
    return *d;
}

}  // namespace

int OrientedLoopConfig::anticlockwise() const {
    return static_cast<int>(std::count(xi.begin(), xi.end(), std::int8_t{1}));
}

int OrientedLoopConfig::clockwise() const {
    return static_cast<int>(std::count(xi.begin(), xi.end(), std::int8_t{-1}));
}

Diagonal interface_pairing(const Domain& domain, const BondConfig& cfg, int primal_edge) {
    const auto& pe = domain.primal_edges()[static_cast<std::size_t>(primal_edge)];
    const auto& mv = domain.medial_vertices()[static_cast<std::size_t>(pe.medial_vertex)];
    return diagonal_of_parity(mv.point, cfg.open[static_cast<std::size_t>(primal_edge)] == 0);
}

LoopConfig trace_loops(const Domain& domain, std::vector<Diagonal> pairing) {
    require_domain(&domain);
    if (pairing.size() != domain.primal_edges().size())
        throw std::invalid_argument("pairing needs one entry per internal vertex");
    const auto medial = domain.medial_edges();
    const auto vertices = domain.medial_vertices();

    LoopConfig lc;
    lc.domain = &domain;
    lc.pairing = std::move(pairing);
    lc.loop_of_edge.assign(medial.size(), -1);

    for (std::size_t first = 0; first < medial.size(); ++first) {
        if (lc.loop_of_edge[first] >= 0) continue;
        Loop loop;
        const int id = static_cast<int>(lc.loops.size());
        int cur = static_cast<int>(first);
        bool forward = true;
        int turns = 0;
        const std::size_t limit = medial.size() + 1;
        while (true) {
            const auto& e = medial[static_cast<std::size_t>(cur)];
            if (lc.loop_of_edge[static_cast<std::size_t>(cur)] >= 0)
                throw std::logic_error("strand revisits a medial edge");
            lc.loop_of_edge[static_cast<std::size_t>(cur)] = id;
            loop.edges.push_back(cur);
            loop.forward.push_back(forward ? 1 : 0);
            loop.boundary = loop.boundary || e.boundary;
            if (loop.edges.size() > limit) throw std::logic_error("strand failed to close");

            const Dir heading = heading_of(e, forward);
            const MedialPoint head = forward ? e.end() : e.start;
            const auto& mv = vertices[static_cast<std::size_t>(domain.medial_vertex_index(head))];
            const Dir back = opposite(heading);
            Dir out = back;
            if (mv.internal) {
                out = partner(back, lc.pairing[static_cast<std::size_t>(mv.primal_edge)]);
            } else {
                for (int d = 0; d < 4; ++d)
                    if (d != static_cast<int>(back) && mv.edge_at[static_cast<std::size_t>(d)] >= 0)
                        out = static_cast<Dir>(d);
            }
            turns += quarter_turn(heading, out);
            const int next = mv.edge_at[static_cast<std::size_t>(out)];
            const bool next_forward = out == Dir::E || out == Dir::N;
            if (next == static_cast<int>(first) && next_forward) break;
            cur = next;
            forward = next_forward;
        }
        if (turns == -4) {
            std::reverse(loop.edges.begin(), loop.edges.end());
            std::reverse(loop.forward.begin(), loop.forward.end());
            for (auto& f : loop.forward) f ^= 1u;
        } else if (turns != 4) {
            throw std::logic_error("traced loop does not wind by +-2 pi");
        }
        lc.loops.push_back(std::move(loop));
    }
    return lc;
}

LoopConfig extract_loops(const BondConfig& cfg) {
    const Domain& domain = require_domain(cfg.domain);
    std::vector<Diagonal> pairing(domain.primal_edges().size());
    for (std::size_t e = 0; e < pairing.size(); ++e) pairing[e] = interface_pairing(domain, cfg, static_cast<int>(e));
    return trace_loops(domain, std::move(pairing));
}

LoopStats loop_stats(const LoopConfig& lc) {
    LoopStats s;
    s.l = static_cast<int>(lc.loops.size());
    for (const auto& loop : lc.loops) (loop.boundary ? s.l_b : s.l_i) += 1;
    return s;
}

bool loops_well_formed(const LoopConfig& lc) {
    const Domain& domain = require_domain(lc.domain);
    const auto medial = domain.medial_edges();
    std::vector<int> seen(medial.size(), 0);
    for (const auto& loop : lc.loops) {
        for (int e : loop.edges) ++seen[static_cast<std::size_t>(e)];
        const std::size_t n = loop.edges.size();
        for (std::size_t k = 0; k < n; ++k) {
            const auto& e = medial[static_cast<std::size_t>(loop.edges[k])];
            const auto& f = medial[static_cast<std::size_t>(loop.edges[(k + 1) % n])];
            const bool fwd = loop.forward[k] != 0;
            const MedialPoint head = fwd ? e.end() : e.start;
            const MedialPoint tail = loop.forward[(k + 1) % n] ? f.start : f.end();
            if (head != tail) return false;
            const auto& mv = domain.medial_vertices()[static_cast<std::size_t>(domain.medial_vertex_index(head))];
            if (!mv.internal) continue;
            const Dir in = opposite(heading_of(e, fwd));
            const Dir out = heading_of(f, loop.forward[(k + 1) % n] != 0);
            if (partner(in, lc.pairing[static_cast<std::size_t>(mv.primal_edge)]) != out) return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

int loop_winding(std::span<const int> edges, std::span<const std::uint8_t> forward, const Domain& domain) {
    if (edges.empty() || edges.size() != forward.size()) throw std::logic_error("malformed loop");
    const auto medial = domain.medial_edges();
    int turns = 0;
    const std::size_t n = edges.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& e = medial[static_cast<std::size_t>(edges[k])];
        const auto& f = medial[static_cast<std::size_t>(edges[(k + 1) % n])];
        const MedialPoint head = forward[k] ? e.end() : e.start;
        const MedialPoint tail = forward[(k + 1) % n] ? f.start : f.end();
        if (head != tail) throw std::logic_error("loop is not a closed walk");
        turns += quarter_turn(heading_of(e, forward[k] != 0), heading_of(f, forward[(k + 1) % n] != 0));
    }
    if (turns != 4 && turns != -4) throw std::logic_error("loop winding is not +-2 pi");
    return turns;
}

double anticlockwise_probability(double lambda) { return 1.0 / (1.0 + std::exp(-2.0 * lambda)); }

OrientedLoopConfig orient_loops(const LoopConfig& lc, double lambda, const KeyedStream& coins) {
    const double p_acw = anticlockwise_probability(lambda);
    std::vector<std::int8_t> xi(lc.loops.size(), 1);
    for (std::size_t k = 0; k < lc.loops.size(); ++k)
        if (!lc.loops[k].boundary) xi[k] = coins.uniform(k) < p_acw ? 1 : -1;
    return {lc, std::move(xi)};
}

OrientedLoopConfig orient_loops(const LoopConfig& lc, std::vector<std::int8_t> xi) {
    if (xi.size() != lc.loops.size()) throw std::invalid_argument("one orientation per loop required");
    for (std::size_t k = 0; k < xi.size(); ++k) {
        if (xi[k] != 1 && xi[k] != -1) throw std::invalid_argument("orientation must be +1 or -1");
        if (lc.loops[k].boundary && xi[k] != 1) throw std::invalid_argument("boundary loops are anticlockwise");
    }
    return {lc, std::move(xi)};
}

double oriented_weight(const OrientedLoopConfig& olc, double lambda) {
    return std::exp(lambda * (olc.anticlockwise() - olc.clockwise()));
}

Laurent oriented_weight(const OrientedLoopConfig& olc, int sign) {
    return Laurent::monomial(2 * sign * (olc.anticlockwise() - olc.clockwise()));
}

std::vector<std::uint8_t> loop_arrows(const OrientedLoopConfig& olc) {
    const Domain& domain = require_domain(olc.base.domain);
    std::vector<std::uint8_t> arrows(domain.medial_edges().size(), 0);
    for (std::size_t k = 0; k < olc.base.loops.size(); ++k) {
        const auto& loop = olc.base.loops[k];
        for (std::size_t t = 0; t < loop.edges.size(); ++t) {
            const bool positive = (loop.forward[t] != 0) == (olc.xi[k] == 1);
            arrows[static_cast<std::size_t>(loop.edges[t])] = positive ? 1 : 0;
        }
    }
    return arrows;
}

}  // namespace bkw
