#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bkw {

// A unit face [i,i+1]x[j,j+1] of the medial lattice Z^2, indexed by its
// lower-left corner. Even faces are vertices of the primal lattice L, odd
// faces are vertices of the dual lattice L*.
struct FaceCoord {
    int i = 0;
    int j = 0;

    bool is_primal() const { return ((i + j) & 1) == 0; }
    auto operator<=>(const FaceCoord&) const = default;
};

// A vertex of the medial lattice Z^2.
struct MedialPoint {
    int a = 0;
    int b = 0;

    auto operator<=>(const MedialPoint&) const = default;
};

enum class Axis : std::uint8_t { Horizontal, Vertical };

// Unit directions, anticlockwise order.
enum class Dir : std::uint8_t { E = 0, N = 1, W = 2, S = 3 };

inline Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) & 3); }

// Quarter turns from heading `in` to heading `out`: +1 left, -1 right, 0 straight.
int quarter_turn(Dir in, Dir out);

MedialPoint step(MedialPoint p, Dir d);

// The two quadrant faces at a medial vertex that share a diagonal.
// NeSw pairs the edges {E,N} and {W,S}; NwSe pairs {N,W} and {S,E}.
enum class Diagonal : std::uint8_t { NeSw, NwSe };

Diagonal diagonal_of_parity(MedialPoint m, bool primal);
Dir partner(Dir d, Diagonal g);

// The medial edge leaving `from` in direction d, as (lower-left endpoint, axis),
// and whether moving along d traverses it in the positive axis direction.
struct EdgeRef {
    MedialPoint start;
    Axis axis;
    bool forward;
};
EdgeRef edge_toward(MedialPoint from, Dir d);

// Faces bordering a medial edge: for horizontal edges (above, below), for
// vertical edges (right, left).
std::array<FaceCoord, 2> faces_of_edge(MedialPoint start, Axis axis);

struct MedialEdge {
    MedialPoint start;
    Axis axis = Axis::Horizontal;
    int even_vertex = -1;   // index of the primal vertex (even face) it bounds
    FaceCoord odd_face;     // the odd face it bounds
    bool boundary = false;  // the odd face is not covered

    MedialPoint end() const {
        return axis == Axis::Horizontal ? MedialPoint{start.a + 1, start.b}
                                        : MedialPoint{start.a, start.b + 1};
    }
};

struct PrimalEdge {
    int u = -1;  // lower endpoint
    int v = -1;  // upper endpoint
    int medial_vertex = -1;
    int dual = -1;
};

// Dual vertex indices: covered odd faces are 0..n-1; the wired outer vertex is n.
struct DualEdge {
    int x = -1;
    int y = -1;
    int medial_vertex = -1;
    int primal = -1;
};

struct MedialVertex {
    MedialPoint point;
    bool internal = false;
    std::array<int, 4> edge_at{-1, -1, -1, -1};  // indexed by Dir
    int primal_edge = -1;                        // internal vertices only
};

// Which kind of face a height-function site is.
enum class FaceKind : std::uint8_t { Primal, DualInterior, DualOuter };

struct FaceSite {
    FaceCoord face;
    FaceKind kind = FaceKind::Primal;
    int index = -1;  // vertex index or dual-vertex index (outer sites share the outer index)
};

struct DiamondInfo {
    FaceCoord center;
    int radius = 0;
};

// A finite vertex set of L together with its fattening (the medial edges of
// its faces) and all index maps used by the models. Immutable after
// construction.
class Domain {
public:
    // Throws std::invalid_argument on odd-parity input, duplicates, or (when
    // require_even) a set whose fattening is not an even domain.
    static Domain from_vertices(std::vector<FaceCoord> vertices, bool require_even = true);

    bool is_even() const { return even_; }

    std::span<const FaceCoord> vertices() const { return vertices_; }
    std::span<const PrimalEdge> primal_edges() const { return primal_edges_; }
    std::span<const DualEdge> dual_edges() const { return dual_edges_; }
    std::span<const MedialEdge> medial_edges() const { return medial_edges_; }
    std::span<const MedialVertex> medial_vertices() const { return medial_vertices_; }
    std::span<const int> internal_vertices() const { return internal_vertices_; }
    std::span<const FaceCoord> dual_vertices() const { return dual_vertices_; }
    std::span<const FaceSite> face_sites() const { return face_sites_; }

    // Anticlockwise boundary cycle of the covered region and, per position,
    // whether the edge is traversed in its positive axis direction.
    std::span<const int> boundary_cycle() const { return boundary_cycle_; }
    std::span<const std::uint8_t> boundary_forward() const { return boundary_forward_; }

    bool is_boundary_vertex(int v) const { return boundary_vertex_[static_cast<std::size_t>(v)] != 0; }
    int outer_dual_vertex() const { return static_cast<int>(dual_vertices_.size()); }
    int n2() const { return n2_; }

    int vertex_index(FaceCoord f) const;
    int dual_vertex_index(FaceCoord f) const;  // covered odd faces only, else -1
    int medial_edge_index(MedialPoint start, Axis axis) const;
    int medial_edge_at(MedialPoint from, Dir d) const;
    int medial_vertex_index(MedialPoint p) const;
    int face_site_index(FaceCoord f) const;

    // Covered faces: vertices plus odd faces whose four neighbors are vertices.
    bool is_covered(FaceCoord f) const;

    const std::optional<DiamondInfo>& diamond() const { return diamond_; }
    void set_diamond(DiamondInfo info) { diamond_ = info; }

    // {"kind":"diamond","center":[i,j],"radius":n} or {"kind":"vertices","count":n}
    std::string descriptor_json() const;

private:
    Domain() = default;

    bool even_ = false;
    std::vector<FaceCoord> vertices_;
    std::vector<std::uint8_t> boundary_vertex_;
    std::vector<PrimalEdge> primal_edges_;
    std::vector<DualEdge> dual_edges_;
    std::vector<FaceCoord> dual_vertices_;
    std::vector<MedialEdge> medial_edges_;
    std::vector<MedialVertex> medial_vertices_;
    std::vector<int> internal_vertices_;
    std::vector<FaceSite> face_sites_;
    std::vector<int> boundary_cycle_;
    std::vector<std::uint8_t> boundary_forward_;
    int n2_ = 0;
    std::optional<DiamondInfo> diamond_;

    std::unordered_map<std::uint64_t, int> vertex_lookup_;
    std::unordered_map<std::uint64_t, int> dual_lookup_;
    std::unordered_map<std::uint64_t, int> medial_edge_lookup_;
    std::unordered_map<std::uint64_t, int> medial_vertex_lookup_;
    std::unordered_map<std::uint64_t, int> site_lookup_;
};

using EvenDomain = Domain;

// Diamond of faces {|i-ci| + |j-cj| <= radius}; its vertex set is the even
// faces inside. Requires ci + cj + radius even so that the outer ring is even.
Domain make_diamond_domain(FaceCoord center, int radius);

// Box of side n vertices of L: the diamond of radius n-1 around (0,0) or (1,0).
Domain make_box_domain(int side);

// "diamond:R", "diamond:R@i,j" or "box:N".
Domain parse_domain_spec(const std::string& spec);

bool is_even_domain(std::span<const FaceCoord> vertices);

// The unique cycle of opposite-parity faces surrounding a finite connected
// same-parity set C, in anticlockwise order. Works in the infinite lattice.
// Throws std::invalid_argument on empty, mixed-parity or disconnected input.
std::vector<FaceCoord> gamma_of_connected_set(std::span<const FaceCoord> cluster);

std::uint64_t pack_key(int x, int y);

}  // namespace bkw
