#include "bkw/height.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace bkw {

namespace {

const Domain& require_domain(const Domain* d) {
    if (d == nullptr) throw std::invalid_argument("no domain");
    return *d;
}

int require_site(const Domain& domain, FaceCoord f) {
    const int s = domain.face_site_index(f);
    if (s < 0)
        throw std::invalid_argument("face (" + std::to_string(f.i) + "," + std::to_string(f.j) +
                                    ") is not in the domain");
    return s;
}

// Height increment from the second face of the edge to the first
// (below -> above, left -> right).
int edge_increment(const MedialEdge& e, std::uint8_t arrow) {
    if (e.axis == Axis::Horizontal) return arrow ? -1 : 1;
    return arrow ? 1 : -1;
}

std::uint64_t face_hash(FaceCoord f) { return pack_key(f.i, f.j); }

}  // namespace

int HeightFunction::at(FaceCoord f) const {
    const int s = require_domain(domain).face_site_index(f);
    if (s < 0) throw std::out_of_range("face outside the domain");
    return values[static_cast<std::size_t>(s)];
}

HeightFunction height_from_arrows(const Domain& domain, std::span<const std::uint8_t> arrows, FaceCoord base) {
    const auto medial = domain.medial_edges();
    if (arrows.size() != medial.size()) throw std::invalid_argument("one arrow per medial edge required");
    const int root = require_site(domain, base);
    const std::size_t n = domain.face_sites().size();

    // (neighbor site, increment) adjacency
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (std::size_t e = 0; e < medial.size(); ++e) {
        const auto faces = faces_of_edge(medial[e].start, medial[e].axis);
        const int hi = domain.face_site_index(faces[0]);
        const int lo = domain.face_site_index(faces[1]);
        const int inc = edge_increment(medial[e], arrows[e]);
        adj[static_cast<std::size_t>(lo)].push_back({hi, inc});
        adj[static_cast<std::size_t>(hi)].push_back({lo, -inc});
    }

    HeightFunction h{&domain, base, std::vector<int>(n, 0)};
    std::vector<std::uint8_t> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(root);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!frontier.empty()) {
        const int s = frontier.front();
        frontier.pop();
        for (auto [t, inc] : adj[static_cast<std::size_t>(s)]) {
            if (seen[static_cast<std::size_t>(t)]) continue;
            seen[static_cast<std::size_t>(t)] = 1;
            h.values[static_cast<std::size_t>(t)] = h.values[static_cast<std::size_t>(s)] + inc;
            frontier.push(t);
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (!seen[s]) throw std::logic_error("face sites are not connected");
        for (auto [t, inc] : adj[s])
            if (h.values[static_cast<std::size_t>(t)] - h.values[s] != inc)
                throw std::logic_error("arrow increments are not a gradient");
    }
    return h;
}

HeightFunction height_from_arrows(const SixVertexConfig& cfg, FaceCoord base) {
    return height_from_arrows(require_domain(cfg.domain), cfg.arrow, base);
}

std::vector<std::uint8_t> loop_interior(const Domain& domain, const Loop& loop) {
    const auto medial = domain.medial_edges();
    std::vector<std::uint8_t> inside(domain.face_sites().size(), 0);
    std::map<int, std::vector<std::pair<int, int>>> rows;  // row -> (a, +1 up / -1 down)
    int amin = 0, amax = 0;
    bool first = true;
    for (std::size_t k = 0; k < loop.edges.size(); ++k) {
        const auto& e = medial[static_cast<std::size_t>(loop.edges[k])];
        if (e.axis != Axis::Vertical) continue;
        rows[e.start.b].push_back({e.start.a, loop.forward[k] ? 1 : -1});
        if (first || e.start.a < amin) amin = e.start.a;
        if (first || e.start.a > amax) amax = e.start.a;
        first = false;
    }
    for (auto& [row, crossings] : rows) {
        std::sort(crossings.begin(), crossings.end(), std::greater<>());
        int wind = 0;
        std::size_t next = 0;
        for (int i = amax - 1; i >= amin; --i) {
            while (next < crossings.size() && crossings[next].first >= i + 1) wind += crossings[next++].second;
            if (wind != 0 && wind != 1) throw std::logic_error("loop winds more than once around a face");
            if (wind == 0) continue;
            const int s = domain.face_site_index({i, row});
            if (s >= 0) inside[static_cast<std::size_t>(s)] = 1;
        }
    }
    return inside;
}

HeightFunction height_from_loops(const OrientedLoopConfig& olc, FaceCoord base) {
    const Domain& domain = require_domain(olc.base.domain);
    const int root = require_site(domain, base);
    const std::size_t n = domain.face_sites().size();
    HeightFunction h{&domain, base, std::vector<int>(n, 0)};
    int offset = 0;
    for (std::size_t k = 0; k < olc.base.loops.size(); ++k) {
        const auto inside = loop_interior(domain, olc.base.loops[k]);
        const int xi = olc.xi[k];
        if (inside[static_cast<std::size_t>(root)]) offset += xi;
        for (std::size_t s = 0; s < n; ++s)
            if (inside[s]) h.values[s] -= xi;
    }
    for (auto& v : h.values) v += offset;
    return h;
}

HeightClusters height_clusters(const HeightFunction& h) {
    const Domain& domain = require_domain(h.domain);
    const auto sites = domain.face_sites();
    DisjointSets ds(static_cast<int>(sites.size()));
    int outer = -1;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        if (sites[s].kind != FaceKind::DualOuter) continue;
        if (outer < 0) outer = static_cast<int>(s);
        else ds.unite(outer, static_cast<int>(s));
    }
    for (const auto& mv : domain.medial_vertices()) {
        const auto p = mv.point;
        const FaceCoord ne{p.a, p.b}, nw{p.a - 1, p.b}, sw{p.a - 1, p.b - 1}, se{p.a, p.b - 1};
        for (auto [f, g] : {std::pair{ne, sw}, std::pair{nw, se}}) {
            const int a = domain.face_site_index(f);
            const int b = domain.face_site_index(g);
            if (a < 0 || b < 0) continue;
            if (h.values[static_cast<std::size_t>(a)] == h.values[static_cast<std::size_t>(b)]) ds.unite(a, b);
        }
    }
    HeightClusters out;
    out.label.assign(sites.size(), -1);
    std::vector<int> root_label(sites.size(), -1);
    for (std::size_t s = 0; s < sites.size(); ++s) {
        const auto r = static_cast<std::size_t>(ds.find(static_cast<int>(s)));
        if (root_label[r] < 0) {
            root_label[r] = static_cast<int>(out.clusters.size());
            HeightCluster c;
            c.height = h.values[s];
            c.primal = sites[s].face.is_primal();
            out.clusters.push_back(c);
        }
        const int l = root_label[r];
        out.label[s] = l;
        auto& c = out.clusters[static_cast<std::size_t>(l)];
        c.sites.push_back(static_cast<int>(s));
        if (c.primal != sites[s].face.is_primal()) throw std::logic_error("height cluster mixes parities");
        if (sites[s].kind == FaceKind::DualOuter ||
            (sites[s].kind == FaceKind::Primal && domain.is_boundary_vertex(sites[s].index)))
            c.touches_boundary = true;
    }
    return out;
}

bool covering_property(const HeightFunction& h) {
    const Domain& domain = require_domain(h.domain);
    for (int m : domain.internal_vertices()) {
        const auto p = domain.medial_vertices()[static_cast<std::size_t>(m)].point;
        auto height = [&](FaceCoord f) { return h.values[static_cast<std::size_t>(domain.face_site_index(f))]; };
        const bool diag1 = height({p.a, p.b}) == height({p.a - 1, p.b - 1});
        const bool diag2 = height({p.a - 1, p.b}) == height({p.a, p.b - 1});
        if (!diag1 && !diag2) return false;
    }
    return true;
}

bool precedes(std::span<const FaceCoord> c, std::span<const FaceCoord> c_prime) {
    if (c.empty() || c_prime.empty()) throw std::invalid_argument("clusters must be nonempty");
    if (c.front().is_primal() == c_prime.front().is_primal())
        throw std::invalid_argument("precedes compares clusters of opposite parity");
    std::unordered_set<std::uint64_t> target;
    for (const auto& f : c_prime) target.insert(face_hash(f));
    for (const auto& f : gamma_of_connected_set(c))
        if (!target.count(face_hash(f))) return false;
    return true;
}

NestedClusterSequence nested_sequence(const BondConfig& cfg, const OrientedLoopConfig& olc, FaceCoord o) {
    const Domain& domain = require_domain(cfg.domain);
    if (olc.base.domain != &domain) throw std::invalid_argument("loops belong to a different domain");
    const int origin = domain.vertex_index(o);
    if (origin < 0) throw std::invalid_argument("origin must be a vertex of the domain");

    const auto plabels = primal_cluster_labels(cfg);
    const auto dlabels = dual_cluster_labels(cfg);
    const int np = plabels.empty() ? 0 : *std::max_element(plabels.begin(), plabels.end()) + 1;
    const int nd = *std::max_element(dlabels.begin(), dlabels.end()) + 1;
    std::vector<std::vector<FaceCoord>> pfaces(static_cast<std::size_t>(np)), dfaces(static_cast<std::size_t>(nd));
    std::vector<std::uint8_t> ptouch(static_cast<std::size_t>(np), 0), dtouch(static_cast<std::size_t>(nd), 0);
    for (std::size_t v = 0; v < plabels.size(); ++v) {
        const auto l = static_cast<std::size_t>(plabels[v]);
        pfaces[l].push_back(domain.vertices()[v]);
        if (domain.is_boundary_vertex(static_cast<int>(v))) ptouch[l] = 1;
    }
    for (std::size_t x = 0; x < domain.dual_vertices().size(); ++x)
        dfaces[static_cast<std::size_t>(dlabels[x])].push_back(domain.dual_vertices()[x]);
    const auto outer_label = static_cast<std::size_t>(dlabels[static_cast<std::size_t>(domain.outer_dual_vertex())]);
    dtouch[outer_label] = 1;
    for (const auto& site : domain.face_sites())
        if (site.kind == FaceKind::DualOuter) dfaces[outer_label].push_back(site.face);

    const HeightFunction h = height_from_loops(olc, o);
    auto level = [&](const std::vector<FaceCoord>& faces) {
        const int v = h.at(faces.front());
        for (const auto& f : faces)
            if (h.at(f) != v) throw std::logic_error("cluster of the nested sequence is not level");
        return v;
    };

    NestedClusterSequence seq;
    bool primal = true;
    auto label = static_cast<std::size_t>(plabels[static_cast<std::size_t>(origin)]);
    std::vector<std::uint8_t> used_loop(olc.base.loops.size(), 0);
    while (true) {
        const auto& faces = primal ? pfaces[label] : dfaces[label];
        seq.clusters.push_back(faces);
        seq.heights.push_back(level(faces));
        if (seq.clusters.size() > 1) {
            const int xi = seq.increments.back();
            if (seq.heights.back() - seq.heights[seq.heights.size() - 2] != xi)
                throw std::logic_error("height increment differs from the loop orientation");
        }
        if (primal ? ptouch[label] : dtouch[label]) {
            seq.reached_boundary = true;
            break;
        }
        const FaceCoord low = *std::min_element(faces.begin(), faces.end(), [](FaceCoord a, FaceCoord b) {
            return std::pair{a.j, a.i} < std::pair{b.j, b.i};
        });
        const FaceCoord below{low.i, low.j - 1};
        const int edge = domain.medial_edge_index({low.i, low.j}, Axis::Horizontal);
        if (edge < 0) throw std::logic_error("cluster boundary edge missing");
        const int loop = olc.base.loop_of_edge[static_cast<std::size_t>(edge)];
        if (used_loop[static_cast<std::size_t>(loop)]) throw std::logic_error("interface loop repeats");
        used_loop[static_cast<std::size_t>(loop)] = 1;

        std::size_t next;
        if (primal) {
            const int x = domain.dual_vertex_index(below);
            next = static_cast<std::size_t>(dlabels[static_cast<std::size_t>(x < 0 ? domain.outer_dual_vertex() : x)]);
        } else {
            const int v = domain.vertex_index(below);
            if (v < 0) throw std::logic_error("dual cluster surrounded by a missing vertex");
            next = static_cast<std::size_t>(plabels[static_cast<std::size_t>(v)]);
        }
        const auto& next_faces = primal ? dfaces[next] : pfaces[next];
        if (!precedes(faces, next_faces)) throw std::logic_error("successor cluster does not contain gamma");
        seq.interface_loops.push_back(loop);
        seq.increments.push_back(olc.xi[static_cast<std::size_t>(loop)]);
        primal = !primal;
        label = next;
    }
    return seq;
}

DriftResult drift_experiment(const DriftOptions& options) {
    if (options.box < 2) throw std::invalid_argument("box side must be at least 2");
    if (options.samples < 1 || options.chains < 1) throw std::invalid_argument("samples and chains must be positive");
    if (options.burn_in < 0 || options.thin < 1) throw std::invalid_argument("burn-in must be >= 0 and thin >= 1");
    DriftResult result;
    result.options = options;
    const double sqrt_q = std::sqrt(options.q);
    result.params = {critical_p(options.q), options.q, std::exp(options.lambda) * sqrt_q};
    result.params.validate();
    result.tanh_lambda = std::tanh(options.lambda);

    const Domain domain = make_box_domain(options.box);
    const FaceCoord origin = domain.vertices()[static_cast<std::size_t>(central_vertex(domain))];
    const int chains = std::min(options.chains, options.samples);
    const int per_chain = (options.samples + chains - 1) / chains;

    struct ChainOutput {
        std::vector<DriftRow> rows;
        std::uint64_t sequences = 0;
        std::uint64_t steps = 0;
    };
    std::vector<ChainOutput> outputs(static_cast<std::size_t>(chains));
    auto run_chain = [&](int c) {
        auto& out = outputs[static_cast<std::size_t>(c)];
        ChainRng rng(options.seed, Stream::EdgeCoin, static_cast<std::uint64_t>(c));
        HeatBathProbe probe(domain);
        BondConfig cfg(domain, false);
        for (int s = 0; s < options.burn_in; ++s) probe.sweep(cfg, result.params, rng);
        for (int k = 0; k < per_chain; ++k) {
            const int sample = c * per_chain + k;
            if (sample >= options.samples) break;
            for (int s = 0; s < options.thin; ++s) probe.sweep(cfg, result.params, rng);
            const LoopConfig lc = extract_loops(cfg);
            const KeyedStream coins(options.seed, Stream::OrientationCoin, static_cast<std::uint64_t>(sample));
            const OrientedLoopConfig olc = orient_loops(lc, options.lambda, coins);
            const auto seq = nested_sequence(cfg, olc, origin);
            ++out.sequences;
            for (std::size_t n = 0; n < seq.increments.size(); ++n) {
                out.rows.push_back({sample, static_cast<int>(n + 1), seq.increments[n], seq.heights[n + 1]});
                ++out.steps;
            }
        }
    };

    const int workers = std::max(1, std::min(options.workers, chains));
    if (workers == 1) {
        for (int c = 0; c < chains; ++c) run_chain(c);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int c = w; c < chains; c += workers) run_chain(c);
            });
        for (auto& t : pool) t.join();
    }

    std::uint64_t sequences = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (auto& out : outputs) {
        sequences += out.sequences;
        for (const auto& r : out.rows) {
            sum += r.xi;
            sum_sq += static_cast<double>(r.xi) * r.xi;
        }
        result.rows.insert(result.rows.end(), out.rows.begin(), out.rows.end());
    }
    result.count = result.rows.size();
    if (result.count > 0) {
        const double n = static_cast<double>(result.count);
        result.mean = sum / n;
        const double var = result.count > 1 ? (sum_sq - n * result.mean * result.mean) / (n - 1.0) : 0.0;
        result.stderr_ = std::sqrt(std::max(var, 0.0) / n);
    }
    result.mean_sequence_length = sequences ? static_cast<double>(result.count) / static_cast<double>(sequences) : 0.0;
    return result;
}

}  // namespace bkw
