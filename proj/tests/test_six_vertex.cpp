#include <doctest.h>

#include "bkw/six_vertex.hpp"

#include <cmath>
#include <set>

using namespace bkw;

namespace {

// Brute force over all arrow assignments with the boundary fixed.
std::set<std::string> brute_force_6v(const Domain& d) {
    const auto n = d.medial_edges().size();
    std::vector<int> free_edges;
    std::vector<std::uint8_t> base(n, 0);
    std::vector<std::uint8_t> fixed(n, 0);
    const auto cycle = d.boundary_cycle();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        base[static_cast<std::size_t>(cycle[k])] = d.boundary_forward()[k];
        fixed[static_cast<std::size_t>(cycle[k])] = 1;
    }
    for (std::size_t e = 0; e < n; ++e)
        if (!fixed[e]) free_edges.push_back(static_cast<int>(e));
    std::set<std::string> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_edges.size()); ++bits) {
        SixVertexConfig cfg{&d, base};
        for (std::size_t k = 0; k < free_edges.size(); ++k)
            cfg.arrow[static_cast<std::size_t>(free_edges[k])] = (bits >> k) & 1u;
        if (is_valid(cfg)) out.insert(arrow_key(cfg));
    }
    return out;
}

}  // namespace

TEST_CASE("six-vertex counts on small diamonds") {
    CHECK(enumerate_6v_all(make_diamond_domain({0, 0}, 0)).size() == 1);
    CHECK(enumerate_6v_all(make_diamond_domain({1, 0}, 1)).size() == 2);
    CHECK(enumerate_6v_all(make_diamond_domain({0, 0}, 2)).size() == 18);
}

TEST_CASE("enumeration agrees with brute force") {
    for (const Domain& d : {make_diamond_domain({1, 0}, 1), make_diamond_domain({0, 0}, 2)}) {
        std::set<std::string> enumerated;
        for (const auto& c : enumerate_6v_all(d)) {
            CHECK(is_valid(c));
            enumerated.insert(arrow_key(c));
        }
        CHECK(enumerated == brute_force_6v(d));
    }
}

TEST_CASE("partitions cover the enumeration exactly once") {
    const Domain d = make_diamond_domain({0, 0}, 2);
    std::multiset<std::string> keys;
    for (int part = 0; part < 3; ++part)
        enumerate_6v(d, [&](const SixVertexConfig& c) { keys.insert(arrow_key(c)); }, {64, 3, part});
    CHECK(keys.size() == 18);
    CHECK(std::set<std::string>(keys.begin(), keys.end()).size() == 18);
    CHECK_THROWS_AS(enumerate_6v(d, [](const SixVertexConfig&) {}, {2, 1, 0}), std::length_error);
}

TEST_CASE("vertex types and split options") {
    for (int t = 1; t <= 4; ++t) {
        REQUIRE(split_options(t).size() == 1);
        CHECK(split_options(t)[0].turn == 0);
    }
    for (int t = 5; t <= 6; ++t) {
        const auto& opts = split_options(t);
        REQUIRE(opts.size() == 2);
        CHECK(opts[0].turn + opts[1].turn == 0);
        CHECK(std::abs(opts[0].turn) == 2);
        CHECK(opts[0].pairing != opts[1].pairing);
    }
    const Domain d = make_diamond_domain({0, 0}, 2);
    for (const auto& c : enumerate_6v_all(d)) {
        const auto types = vertex_types(c);
        int n56 = 0;
        for (int t : types) {
            CHECK(t >= 1);
            CHECK(t <= 6);
            n56 += t >= 5;
        }
        CHECK(n56 == count_c_vertices(c));
        CHECK(sixv_weight(c, 2.5) == doctest::Approx(std::pow(2.5, n56)));
        CHECK(sixv_weight(c) == (Laurent::x() + Laurent::monomial(-1)).pow(static_cast<unsigned>(n56)));
    }
}

TEST_CASE("invalid configurations are rejected") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    auto c = enumerate_6v_all(d).front();
    const int b = d.boundary_cycle()[0];
    c.arrow[static_cast<std::size_t>(b)] ^= 1u;
    CHECK_FALSE(is_valid(c));
    CHECK_FALSE(validation_error(c).empty());
    CHECK_THROWS_AS(split_with_choices(c, std::vector<bool>(d.internal_vertices().size(), true)), std::invalid_argument);
}

TEST_CASE("coupled parameters") {
    const auto p = CoupledParams::from_lambda(std::acosh(std::sqrt(10.0) / 2.0));
    CHECK(p.q == doctest::Approx(10.0));
    CHECK(p.c * p.c == doctest::Approx(2.0 + p.sqrt_q));
    CHECK(p.p == doctest::Approx(std::sqrt(10.0) / (1 + std::sqrt(10.0))));
    CHECK(p.q_b == doctest::Approx(std::exp(p.lambda) * p.sqrt_q));
    const auto zero = CoupledParams::from_lambda(0.0);
    CHECK(zero.q == doctest::Approx(4.0));
    CHECK(zero.c == doctest::Approx(2.0));
}

TEST_CASE("split round trip and winding identity") {
    const Domain d = make_diamond_domain({0, 0}, 2);
    long outcomes = 0;
    for (const auto& c : enumerate_6v_all(d)) {
        const auto cv = c_vertices(c);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cv.size()); ++bits) {
            std::vector<bool> choice(d.internal_vertices().size(), false);
            for (std::size_t k = 0; k < cv.size(); ++k) choice[static_cast<std::size_t>(cv[k])] = (bits >> k) & 1u;
            const auto r = split_with_choices(c, choice);
            CHECK(loops_well_formed(r.loops.base));
            CHECK(split_inverse(r.loops).arrow == c.arrow);
            CHECK(check_winding_identity(r.loops, r.record));
            CHECK(r.record.anticlockwise + r.record.clockwise == static_cast<int>(cv.size()));
            for (const auto& loop : r.loops.base.loops)
                CHECK(loop_winding(loop.edges, loop.forward, d) == 4);
            ++outcomes;
        }
    }
    CHECK(outcomes > 18);
}

TEST_CASE("randomized split uses keyed coins") {
    const Domain d = make_diamond_domain({0, 0}, 2);
    const auto configs = enumerate_6v_all(d);
    const KeyedStream coins(9, Stream::SplitCoin, 0);
    for (const auto& c : configs) {
        const auto a = split(c, 0.8, coins);
        const auto b = split(c, 0.8, coins);
        CHECK(oriented_key(a.loops) == oriented_key(b.loops));
        for (int v : c_vertices(c)) {
            const bool acw = coins.uniform(static_cast<std::uint64_t>(v)) < 1.0 / (1.0 + std::exp(-0.8));
            CHECK((a.record.turn[static_cast<std::size_t>(v)] > 0) == acw);
        }
    }
}
