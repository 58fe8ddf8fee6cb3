#include "bkw/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace bkw {

std::uint64_t pack_key(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
}

namespace {

std::uint64_t edge_key(MedialPoint start, Axis axis) {
    return pack_key(2 * start.a + (axis == Axis::Vertical ? 1 : 0), start.b);
}

std::uint64_t face_key(FaceCoord f) { return pack_key(f.i, f.j); }

bool lowest_leftmost(FaceCoord x, FaceCoord y) {
    return x.j != y.j ? x.j < y.j : x.i < y.i;
}

constexpr std::array<std::array<int, 2>, 4> kDiagonalOffsets{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

}  // namespace

int quarter_turn(Dir in, Dir out) {
    switch ((static_cast<int>(out) - static_cast<int>(in) + 4) & 3) {
        case 0: return 0;
        case 1: return 1;
        case 3: return -1;
        default: throw std::logic_error("medial walk reversed direction");
    }
}

MedialPoint step(MedialPoint p, Dir d) {
    switch (d) {
        case Dir::E: return {p.a + 1, p.b};
        case Dir::N: return {p.a, p.b + 1};
        case Dir::W: return {p.a - 1, p.b};
        case Dir::S: return {p.a, p.b - 1};
    }
    return p;
}

Diagonal diagonal_of_parity(MedialPoint m, bool primal) {
    const bool ne_is_primal = ((m.a + m.b) & 1) == 0;
    return ne_is_primal == primal ? Diagonal::NeSw : Diagonal::NwSe;
}

Dir partner(Dir d, Diagonal g) {
    if (g == Diagonal::NeSw) {
        switch (d) {
            case Dir::E: return Dir::N;
            case Dir::N: return Dir::E;
            case Dir::W: return Dir::S;
            case Dir::S: return Dir::W;
        }
    } else {
        switch (d) {
            case Dir::N: return Dir::W;
            case Dir::W: return Dir::N;
            case Dir::S: return Dir::E;
            case Dir::E: return Dir::S;
        }
    }
    return d;
}

EdgeRef edge_toward(MedialPoint from, Dir d) {
    switch (d) {
        case Dir::E: return {from, Axis::Horizontal, true};
        case Dir::N: return {from, Axis::Vertical, true};
        case Dir::W: return {{from.a - 1, from.b}, Axis::Horizontal, false};
        case Dir::S: return {{from.a, from.b - 1}, Axis::Vertical, false};
    }
    return {from, Axis::Horizontal, true};
}

std::array<FaceCoord, 2> faces_of_edge(MedialPoint start, Axis axis) {
    if (axis == Axis::Horizontal) return {FaceCoord{start.a, start.b}, FaceCoord{start.a, start.b - 1}};
    return {FaceCoord{start.a, start.b}, FaceCoord{start.a - 1, start.b}};
}

Domain Domain::from_vertices(std::vector<FaceCoord> vertices, bool require_even) {
    if (vertices.empty()) throw std::invalid_argument("domain needs at least one vertex");
    for (const auto& f : vertices)
        if (!f.is_primal()) throw std::invalid_argument("domain vertices must be even faces");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("duplicate domain vertex");

    Domain d;
    d.vertices_ = std::move(vertices);
    for (std::size_t k = 0; k < d.vertices_.size(); ++k)
        d.vertex_lookup_.emplace(face_key(d.vertices_[k]), static_cast<int>(k));

    d.boundary_vertex_.assign(d.vertices_.size(), 0);
    for (std::size_t k = 0; k < d.vertices_.size(); ++k) {
        const auto f = d.vertices_[k];
        for (const auto& off : kDiagonalOffsets)
            if (d.vertex_index({f.i + off[0], f.j + off[1]}) < 0) d.boundary_vertex_[k] = 1;
    }

    // Four sides per vertex face; even faces never share a side.
    for (std::size_t k = 0; k < d.vertices_.size(); ++k) {
        const auto f = d.vertices_[k];
        const int vi = static_cast<int>(k);
        d.medial_edges_.push_back({{f.i, f.j}, Axis::Horizontal, vi, {f.i, f.j - 1}, false});
        d.medial_edges_.push_back({{f.i, f.j + 1}, Axis::Horizontal, vi, {f.i, f.j + 1}, false});
        d.medial_edges_.push_back({{f.i, f.j}, Axis::Vertical, vi, {f.i - 1, f.j}, false});
        d.medial_edges_.push_back({{f.i + 1, f.j}, Axis::Vertical, vi, {f.i + 1, f.j}, false});
    }
    std::sort(d.medial_edges_.begin(), d.medial_edges_.end(), [](const MedialEdge& x, const MedialEdge& y) {
        if (x.start != y.start) return x.start < y.start;
        return x.axis < y.axis;
    });
    for (std::size_t k = 0; k < d.medial_edges_.size(); ++k)
        d.medial_edge_lookup_.emplace(edge_key(d.medial_edges_[k].start, d.medial_edges_[k].axis),
                                      static_cast<int>(k));

    std::vector<FaceCoord> odd;
    for (const auto& e : d.medial_edges_) odd.push_back(e.odd_face);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    for (const auto& f : odd) {
        const bool covered = d.vertex_index({f.i + 1, f.j}) >= 0 && d.vertex_index({f.i - 1, f.j}) >= 0 &&
                             d.vertex_index({f.i, f.j + 1}) >= 0 && d.vertex_index({f.i, f.j - 1}) >= 0;
        if (covered) {
            d.dual_lookup_.emplace(face_key(f), static_cast<int>(d.dual_vertices_.size()));
            d.dual_vertices_.push_back(f);
        }
    }
    for (auto& e : d.medial_edges_) e.boundary = d.dual_vertex_index(e.odd_face) < 0;

    std::vector<MedialPoint> points;
    for (const auto& e : d.medial_edges_) {
        points.push_back(e.start);
        points.push_back(e.end());
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& p : points) {
        MedialVertex mv;
        mv.point = p;
        int present = 0;
        for (int dir = 0; dir < 4; ++dir) {
            mv.edge_at[static_cast<std::size_t>(dir)] = d.medial_edge_at(p, static_cast<Dir>(dir));
            if (mv.edge_at[static_cast<std::size_t>(dir)] >= 0) ++present;
        }
        mv.internal = present == 4;
        d.medial_vertex_lookup_.emplace(pack_key(p.a, p.b), static_cast<int>(d.medial_vertices_.size()));
        d.medial_vertices_.push_back(mv);
    }

    for (std::size_t k = 0; k < d.medial_vertices_.size(); ++k) {
        auto& mv = d.medial_vertices_[k];
        if (!mv.internal) {
            ++d.n2_;
            continue;
        }
        const auto p = mv.point;
        const Diagonal primal_diag = diagonal_of_parity(p, true);
        FaceCoord lo, hi, dlo, dhi;
        if (primal_diag == Diagonal::NeSw) {
            lo = {p.a - 1, p.b - 1};
            hi = {p.a, p.b};
            dlo = {p.a, p.b - 1};
            dhi = {p.a - 1, p.b};
        } else {
            lo = {p.a, p.b - 1};
            hi = {p.a - 1, p.b};
            dlo = {p.a - 1, p.b - 1};
            dhi = {p.a, p.b};
        }
        PrimalEdge pe;
        pe.u = d.vertex_index(lo);
        pe.v = d.vertex_index(hi);
        if (pe.u < 0 || pe.v < 0) throw std::logic_error("internal medial vertex without a primal edge");
        pe.medial_vertex = static_cast<int>(k);
        const int id = static_cast<int>(d.primal_edges_.size());
        pe.dual = id;
        DualEdge de;
        de.x = d.dual_vertex_index(dlo);
        de.y = d.dual_vertex_index(dhi);
        if (de.x < 0) de.x = d.outer_dual_vertex();
        if (de.y < 0) de.y = d.outer_dual_vertex();
        de.medial_vertex = static_cast<int>(k);
        de.primal = id;
        mv.primal_edge = id;
        d.primal_edges_.push_back(pe);
        d.dual_edges_.push_back(de);
        d.internal_vertices_.push_back(static_cast<int>(k));
    }

    // Height sites: every face bordering a medial edge.
    for (std::size_t k = 0; k < d.vertices_.size(); ++k)
        d.face_sites_.push_back({d.vertices_[k], FaceKind::Primal, static_cast<int>(k)});
    for (const auto& f : odd) {
        const int di = d.dual_vertex_index(f);
        d.face_sites_.push_back(
            {f, di >= 0 ? FaceKind::DualInterior : FaceKind::DualOuter, di >= 0 ? di : d.outer_dual_vertex()});
    }
    std::sort(d.face_sites_.begin(), d.face_sites_.end(),
              [](const FaceSite& x, const FaceSite& y) { return x.face < y.face; });
    for (std::size_t k = 0; k < d.face_sites_.size(); ++k)
        d.site_lookup_.emplace(face_key(d.face_sites_[k].face), static_cast<int>(k));

    // Boundary of the covered region: a single simple cycle, alternating axes.
    std::unordered_map<std::uint64_t, std::vector<int>> incident;
    int boundary_edges = 0;
    for (std::size_t k = 0; k < d.medial_edges_.size(); ++k) {
        const auto& e = d.medial_edges_[k];
        if (!e.boundary) continue;
        ++boundary_edges;
        incident[pack_key(e.start.a, e.start.b)].push_back(static_cast<int>(k));
        incident[pack_key(e.end().a, e.end().b)].push_back(static_cast<int>(k));
    }
    bool even = boundary_edges > 0;
    for (const auto& [key, list] : incident) {
        if (list.size() != 2 || d.medial_edges_[static_cast<std::size_t>(list[0])].axis ==
                                    d.medial_edges_[static_cast<std::size_t>(list[1])].axis) {
            even = false;
            break;
        }
    }
    if (even) {
        // Start on the first boundary edge, covered face on the left.
        int first = -1;
        for (std::size_t k = 0; k < d.medial_edges_.size() && first < 0; ++k)
            if (d.medial_edges_[k].boundary) first = static_cast<int>(k);
        const auto& e0 = d.medial_edges_[static_cast<std::size_t>(first)];
        const FaceCoord covered = d.vertices_[static_cast<std::size_t>(e0.even_vertex)];
        const auto sides = faces_of_edge(e0.start, e0.axis);
        // Horizontal: left of +x is above. Vertical: left of +y is the left face.
        bool forward = e0.axis == Axis::Horizontal ? covered == sides[0] : covered == sides[1];
        int cur = first;
        do {
            d.boundary_cycle_.push_back(cur);
            d.boundary_forward_.push_back(forward ? 1 : 0);
            const auto& e = d.medial_edges_[static_cast<std::size_t>(cur)];
            const MedialPoint head = forward ? e.end() : e.start;
            const auto& list = incident[pack_key(head.a, head.b)];
            const int next = list[0] == cur ? list[1] : list[0];
            const auto& n = d.medial_edges_[static_cast<std::size_t>(next)];
            forward = n.start == head;
            cur = next;
        } while (cur != first && d.boundary_cycle_.size() <= static_cast<std::size_t>(boundary_edges));
        even = cur == first && static_cast<int>(d.boundary_cycle_.size()) == boundary_edges;
        if (!even) {
            d.boundary_cycle_.clear();
            d.boundary_forward_.clear();
        }
    }
    d.even_ = even;
    if (require_even && !even) throw std::invalid_argument("vertex set is not an even domain");
    return d;
}

int Domain::vertex_index(FaceCoord f) const {
    auto it = vertex_lookup_.find(face_key(f));
    return it == vertex_lookup_.end() ? -1 : it->second;
}

int Domain::dual_vertex_index(FaceCoord f) const {
    auto it = dual_lookup_.find(face_key(f));
    return it == dual_lookup_.end() ? -1 : it->second;
}

int Domain::medial_edge_index(MedialPoint start, Axis axis) const {
    auto it = medial_edge_lookup_.find(edge_key(start, axis));
    return it == medial_edge_lookup_.end() ? -1 : it->second;
}

int Domain::medial_edge_at(MedialPoint from, Dir d) const {
    const auto ref = edge_toward(from, d);
    return medial_edge_index(ref.start, ref.axis);
}

int Domain::medial_vertex_index(MedialPoint p) const {
    auto it = medial_vertex_lookup_.find(pack_key(p.a, p.b));
    return it == medial_vertex_lookup_.end() ? -1 : it->second;
}

int Domain::face_site_index(FaceCoord f) const {
    auto it = site_lookup_.find(face_key(f));
    return it == site_lookup_.end() ? -1 : it->second;
}

bool Domain::is_covered(FaceCoord f) const {
    return f.is_primal() ? vertex_index(f) >= 0 : dual_vertex_index(f) >= 0;
}

std::string Domain::descriptor_json() const {
    if (diamond_) {
        return "{\"kind\":\"diamond\",\"center\":[" + std::to_string(diamond_->center.i) + "," +
               std::to_string(diamond_->center.j) + "],\"radius\":" + std::to_string(diamond_->radius) + "}";
    }
    return "{\"kind\":\"vertices\",\"count\":" + std::to_string(vertices_.size()) + "}";
}

Domain make_diamond_domain(FaceCoord center, int radius) {
    if (radius < 0) throw std::invalid_argument("diamond radius must be nonnegative");
    if (((center.i + center.j + radius) & 1) != 0)
        throw std::invalid_argument("diamond center parity must match radius parity");
    std::vector<FaceCoord> vs;
    for (int di = -radius; di <= radius; ++di) {
        const int span = radius - std::abs(di);
        for (int dj = -span; dj <= span; ++dj) {
            FaceCoord f{center.i + di, center.j + dj};
            if (f.is_primal()) vs.push_back(f);
        }
    }
    Domain d = Domain::from_vertices(std::move(vs), true);
    d.set_diamond({center, radius});
    return d;
}

Domain make_box_domain(int side) {
    if (side < 1) throw std::invalid_argument("box side must be positive");
    const int radius = side - 1;
    return make_diamond_domain((radius & 1) ? FaceCoord{1, 0} : FaceCoord{0, 0}, radius);
}

bool is_even_domain(std::span<const FaceCoord> vertices) {
    try {
        return Domain::from_vertices({vertices.begin(), vertices.end()}, false).is_even();
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::vector<FaceCoord> gamma_of_connected_set(std::span<const FaceCoord> cluster) {
    if (cluster.empty()) throw std::invalid_argument("gamma of an empty set");
    const bool primal = cluster.front().is_primal();
    std::unordered_set<std::uint64_t> members;
    for (const auto& f : cluster) {
        if (f.is_primal() != primal) throw std::invalid_argument("gamma needs a same-parity set");
        members.insert(face_key(f));
    }
    auto contains = [&](FaceCoord f) { return members.count(face_key(f)) != 0; };

    // Connectivity through diagonal neighbors.
    {
        std::unordered_set<std::uint64_t> seen{face_key(cluster.front())};
        std::deque<FaceCoord> queue{cluster.front()};
        while (!queue.empty()) {
            const auto f = queue.front();
            queue.pop_front();
            for (const auto& off : kDiagonalOffsets) {
                const FaceCoord g{f.i + off[0], f.j + off[1]};
                if (contains(g) && seen.insert(face_key(g)).second) queue.push_back(g);
            }
        }
        if (seen.size() != members.size()) throw std::invalid_argument("gamma needs a connected set");
    }

    // Walk the outer interface with the set on the left. At each medial
    // vertex the strand wraps the opposite-parity faces when the set's own
    // diagonal is joined, and the set's faces otherwise.
    const FaceCoord start = *std::min_element(cluster.begin(), cluster.end(), lowest_leftmost);
    const MedialPoint origin{start.i, start.j};
    MedialPoint at{start.i + 1, start.j};
    Dir heading = Dir::E;
    std::vector<FaceCoord> cycle;
    auto record = [&](MedialPoint from, Dir d) {
        const auto ref = edge_toward(from, d);
        const auto sides = faces_of_edge(ref.start, ref.axis);
        const FaceCoord across = sides[0].is_primal() == primal ? sides[1] : sides[0];
        if (cycle.empty() || cycle.back() != across) cycle.push_back(across);
    };
    record({start.i, start.j}, Dir::E);
    const std::size_t limit = 8 * members.size() + 16;
    for (std::size_t steps = 0;; ++steps) {
        if (steps > limit) throw std::logic_error("gamma trace did not close");
        const Diagonal own = diagonal_of_parity(at, primal);
        FaceCoord f1, f2;
        if (own == Diagonal::NeSw) {
            f1 = {at.a, at.b};
            f2 = {at.a - 1, at.b - 1};
        } else {
            f1 = {at.a - 1, at.b};
            f2 = {at.a, at.b - 1};
        }
        const bool joined = contains(f1) && contains(f2);
        const Diagonal wrap = joined ? (own == Diagonal::NeSw ? Diagonal::NwSe : Diagonal::NeSw) : own;
        const Dir out = partner(opposite(heading), wrap);
        if (at == origin && out == Dir::E) break;
        record(at, out);
        at = step(at, out);
        heading = out;
    }
    if (cycle.size() > 1 && cycle.front() == cycle.back()) cycle.pop_back();
    return cycle;
}

Domain parse_domain_spec(const std::string& spec) {
    const std::string usage = "bad domain '" + spec + "': expected diamond:R, diamond:R@i,j or box:N";
    auto number = [&](const std::string& text) {
        int v = 0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (text.empty() || ec != std::errc() || ptr != end) throw std::invalid_argument(usage);
        return v;
    };
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument(usage);
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "box") return make_box_domain(number(rest));
    if (kind != "diamond") throw std::invalid_argument(usage);
    const auto at = rest.find('@');
    const int radius = number(rest.substr(0, at));
    if (radius < 0) throw std::invalid_argument(usage);
    FaceCoord center{(radius & 1) ? 1 : 0, 0};
    if (at != std::string::npos) {
        const std::string c = rest.substr(at + 1);
        const auto comma = c.find(',');
        if (comma == std::string::npos) throw std::invalid_argument(usage);
        center = {number(c.substr(0, comma)), number(c.substr(comma + 1))};
    }
    return make_diamond_domain(center, radius);
}

}  // namespace bkw
