#include <doctest.h>

#include "bkw/lattice.hpp"

#include <algorithm>
#include <set>

using namespace bkw;

namespace {

// Boundary edges and convex corners of the union of faces, by flood fill
// over unit squares.
struct Outline {
    int edges = 0;
    int medial_edges = 0;
};

Outline outline_of(const std::vector<FaceCoord>& faces) {
    std::set<FaceCoord> s(faces.begin(), faces.end());
    Outline o;
    int shared = 0;
    for (const auto& f : faces)
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
            if (s.count({f.i + di, f.j + dj})) ++shared;
            else ++o.edges;
        }
    o.medial_edges = 4 * static_cast<int>(faces.size()) - shared / 2;
    return o;
}

std::vector<FaceCoord> covered_faces(const Domain& d) {
    std::vector<FaceCoord> out;
    for (const auto& s : d.face_sites())
        if (s.kind != FaceKind::DualOuter) out.push_back(s.face);
    return out;
}

}  // namespace

TEST_CASE("diamond examples") {
    const Domain d0 = make_diamond_domain({0, 0}, 0);
    CHECK(d0.vertices().size() == 1);
    CHECK(d0.primal_edges().empty());
    CHECK(d0.medial_edges().size() == 4);
    CHECK(d0.internal_vertices().empty());
    CHECK(d0.n2() == 4);

    const Domain d1 = make_diamond_domain({1, 0}, 1);
    CHECK(d1.vertices().size() == 4);
    CHECK(d1.primal_edges().size() == 4);
    CHECK(d1.boundary_cycle().size() == 12);
    CHECK(d1.internal_vertices().size() == 4);

    const Domain d2 = make_diamond_domain({0, 0}, 2);
    CHECK(d2.vertices().size() == 9);
    CHECK(d2.primal_edges().size() == 12);
    CHECK(d2.descriptor_json() == R"({"kind":"diamond","center":[0,0],"radius":2})");
}

TEST_CASE("diamond parity is enforced") {
    CHECK_THROWS_AS(make_diamond_domain({0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_diamond_domain({1, 0}, 2), std::invalid_argument);
}

TEST_CASE("n2 and medial edge counts against flood fill") {
    for (int r = 0; r <= 5; ++r) {
        CAPTURE(r);
        const Domain d = make_diamond_domain({r % 2, 0}, r);
        CHECK(d.n2() == 4 * r + 4);
        const auto faces = covered_faces(d);
        const auto o = outline_of(faces);
        CHECK(static_cast<int>(d.medial_edges().size()) == o.medial_edges);
        CHECK(static_cast<int>(d.boundary_cycle().size()) == o.edges);
        // alternating axes along the cycle
        const auto cyc = d.boundary_cycle();
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const auto& a = d.medial_edges()[static_cast<std::size_t>(cyc[k])];
            const auto& b = d.medial_edges()[static_cast<std::size_t>(cyc[(k + 1) % cyc.size()])];
            CHECK(a.axis != b.axis);
        }
        int non_internal = 0;
        for (const auto& mv : d.medial_vertices()) non_internal += mv.internal ? 0 : 1;
        CHECK(non_internal == d.n2());
    }
}

TEST_CASE("primal and dual edges pair up") {
    const Domain d = make_diamond_domain({0, 0}, 4);
    REQUIRE(d.primal_edges().size() == d.dual_edges().size());
    for (std::size_t e = 0; e < d.primal_edges().size(); ++e) {
        const auto& pe = d.primal_edges()[e];
        const auto& de = d.dual_edges()[static_cast<std::size_t>(pe.dual)];
        CHECK(de.primal == static_cast<int>(e));
        CHECK(de.medial_vertex == pe.medial_vertex);
        const auto u = d.vertices()[static_cast<std::size_t>(pe.u)];
        const auto v = d.vertices()[static_cast<std::size_t>(pe.v)];
        CHECK(std::abs(u.i - v.i) == 1);
        CHECK(std::abs(u.j - v.j) == 1);
    }
    for (const auto& e : d.medial_edges()) {
        const auto faces = faces_of_edge(e.start, e.axis);
        CHECK(faces[0].is_primal() != faces[1].is_primal());
    }
}

TEST_CASE("even-domain predicate") {
    const std::vector<FaceCoord> single{{0, 0}};
    CHECK(is_even_domain(single));
    const std::vector<FaceCoord> pinched{{0, 0}, {1, 1}};
    CHECK_FALSE(is_even_domain(pinched));
    const std::vector<FaceCoord> plus{{0, 0}, {2, 0}, {1, 1}, {1, -1}};
    CHECK(is_even_domain(plus));
    const std::vector<FaceCoord> odd{{1, 0}};
    CHECK_FALSE(is_even_domain(odd));
    const std::vector<FaceCoord> apart{{0, 0}, {4, 0}};
    CHECK_FALSE(is_even_domain(apart));
}

TEST_CASE("gamma of connected sets") {
    const std::vector<FaceCoord> one{{0, 0}};
    auto g = gamma_of_connected_set(one);
    std::set<FaceCoord> gs(g.begin(), g.end());
    CHECK(gs == std::set<FaceCoord>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    CHECK(g.size() == 4);

    const std::vector<FaceCoord> two{{0, 0}, {1, 1}};
    g = gamma_of_connected_set(two);
    CHECK(g.size() == 6);
    for (const auto& f : g) CHECK_FALSE(f.is_primal());

    const std::vector<FaceCoord> dual{{1, 0}};
    g = gamma_of_connected_set(dual);
    CHECK(g.size() == 4);
    for (const auto& f : g) CHECK(f.is_primal());

    const std::vector<FaceCoord> empty;
    CHECK_THROWS_AS(gamma_of_connected_set(empty), std::invalid_argument);
    const std::vector<FaceCoord> split{{0, 0}, {4, 0}};
    CHECK_THROWS_AS(gamma_of_connected_set(split), std::invalid_argument);
    const std::vector<FaceCoord> mixed{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(gamma_of_connected_set(mixed), std::invalid_argument);
}

TEST_CASE("gamma faces touch the set and stay outside it") {
    const std::vector<FaceCoord> c{{0, 0}, {1, 1}, {2, 0}, {2, 2}, {3, 1}};
    const auto g = gamma_of_connected_set(c);
    std::set<FaceCoord> cs(c.begin(), c.end());
    for (const auto& f : g) {
        CHECK_FALSE(cs.count(f));
        bool touches = false;
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}})
            touches = touches || cs.count({f.i + di, f.j + dj});
        CHECK(touches);
    }
    std::set<FaceCoord> distinct(g.begin(), g.end());
    CHECK(distinct.size() == g.size());
}

TEST_CASE("domain string parsing") {
    CHECK(parse_domain_spec("diamond:1").vertices().size() == 4);
    CHECK(parse_domain_spec("diamond:2@2,0").vertices().size() == 9);
    CHECK(parse_domain_spec("box:4").vertices().size() == 16);
    CHECK_THROWS_AS(parse_domain_spec("circle:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain_spec("diamond:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain_spec("diamond:1@0,0"), std::invalid_argument);
}
