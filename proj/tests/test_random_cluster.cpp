#include <doctest.h>

#include "bkw/random_cluster.hpp"

#include <cmath>
#include <numeric>

using namespace bkw;

namespace {

Domain two_edge_path() { return Domain::from_vertices({{0, 0}, {1, 1}, {2, 2}}, false); }

int open_edge_count(std::uint64_t bits) { return __builtin_popcountll(bits); }

}  // namespace

TEST_CASE("cluster statistics examples") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    const auto open = cluster_stats(BondConfig(d, true));
    CHECK(open.o == 4);
    CHECK(open.c == 0);
    CHECK(open.k_i == 0);
    CHECK(open.k_b == 1);
    CHECK(open.k_dual == 2);

    const auto closed = cluster_stats(BondConfig(d, false));
    CHECK(closed.o == 0);
    CHECK(closed.k() == 4);
    CHECK(closed.k_dual == 1);

    const Domain d2 = make_diamond_domain({0, 0}, 2);
    for (std::uint64_t bits = 0; bits < 4096; bits += 37) {
        const auto s = cluster_stats(BondConfig::from_bits(d2, bits));
        CHECK(9 - s.o + s.k_dual == s.k() + 1);
        CHECK(s.o + s.c == 12);
    }
    // the center vertex of the radius-2 diamond is the only interior vertex
    const auto all_closed = cluster_stats(BondConfig(d2, false));
    CHECK(all_closed.k_i == 1);
    CHECK(all_closed.k_b == 8);
}

TEST_CASE("fk weight examples") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    const BondConfig empty(d, false);
    CHECK(fk_weight(empty, FKParams{2.0 / 3.0, 4.0, 4.0}) == doctest::Approx(std::pow(1.0 / 3.0, 4) * 256.0));
    CHECK(fk_weight(empty, RationalFKParams{mpq_class(2, 3), 4, 4}) == mpq_class(256, 81));
    CHECK(critical_p(4.0) == doctest::Approx(2.0 / 3.0));

    // free weight equals p^o (1-p)^c q^k
    const Domain d2 = make_diamond_domain({0, 0}, 2);
    for (std::uint64_t bits = 0; bits < 4096; bits += 101) {
        const auto cfg = BondConfig::from_bits(d2, bits);
        const auto s = cluster_stats(cfg);
        const double expected = std::pow(0.3, s.o) * std::pow(0.7, s.c) * std::pow(2.5, s.k());
        CHECK(fk_weight(cfg, FKParams::free(0.3, 2.5)) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("symbolic weight at x = 1 matches q = 4, lambda = 0") {
    const Domain d = make_diamond_domain({0, 0}, 2);
    const auto sym = SymbolicFKParams::coupled(1);
    const FKParams flt{2.0 / 3.0, 4.0, 2.0};
    const double ref_sym = fk_weight(BondConfig(d), sym).evaluate(1.0);
    const double ref_flt = fk_weight(BondConfig(d), flt);
    for (std::uint64_t bits = 1; bits < 4096; bits += 97) {
        const auto cfg = BondConfig::from_bits(d, bits);
        CHECK(fk_weight(cfg, sym).evaluate(1.0) / ref_sym ==
              doctest::Approx(fk_weight(cfg, flt) / ref_flt).epsilon(1e-12));
    }
}

TEST_CASE("critical weight in odds form agrees with the general form") {
    const Domain d = make_diamond_domain({1, 0}, 3);
    const double q = 10.0, lambda = std::acosh(std::sqrt(q) / 2.0);
    const FKParams params{critical_p(q), q, std::exp(lambda) * std::sqrt(q)};
    const double norm = std::pow(1.0 + std::sqrt(q), static_cast<double>(d.primal_edges().size()));
    for (std::uint64_t bits = 0; bits < 5000; bits += 31) {
        BondConfig cfg(d);
        for (std::size_t e = 0; e < cfg.open.size(); ++e) cfg.open[e] = ((bits * 2654435761u) >> (e % 31)) & 1u;
        const auto s = cluster_stats(cfg);
        const double simplified = std::pow(std::sqrt(q), s.o) * std::pow(q, s.k_i) * std::pow(params.q_b, s.k_b) / norm;
        CHECK(fk_weight(cfg, params) == doctest::Approx(simplified).epsilon(1e-12));
    }
}

TEST_CASE("heat-bath conditional cases") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    const FKParams params{0.75, 9.0, 3.0};
    const BondConfig closed(d, false);
    // every vertex of the radius-1 diamond is a boundary vertex
    CHECK(heat_bath_conditional(closed, 0, params) == doctest::Approx(0.5));
    BondConfig ring(d, true);
    CHECK(heat_bath_conditional(ring, 0, params) == doctest::Approx(0.75));

    const Domain d2 = make_diamond_domain({0, 0}, 2);
    const int center = d2.vertex_index({0, 0});
    int edge = -1;
    for (std::size_t e = 0; e < d2.primal_edges().size(); ++e)
        if (d2.primal_edges()[e].u == center || d2.primal_edges()[e].v == center) edge = static_cast<int>(e);
    REQUIRE(edge >= 0);
    CHECK(heat_bath_conditional(BondConfig(d2, false), edge, params) == doctest::Approx(0.75 / (0.75 + 9 * 0.25)));

    const FKParams free = FKParams::free(0.75, 9.0);
    CHECK(heat_bath_conditional(closed, 0, free) ==
          doctest::Approx(heat_bath_conditional(BondConfig(d2, false), edge, free)));
}

TEST_CASE("probe agrees with the union-find conditional") {
    const Domain d = make_diamond_domain({1, 0}, 3);
    HeatBathProbe probe(d);
    const FKParams params{0.6, 7.0, 2.0};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        BondConfig cfg(d);
        std::uint64_t s = seed;
        for (auto& e : cfg.open) e = splitmix64(s) & 1u;
        for (int e = 0; e < static_cast<int>(cfg.open.size()); ++e)
            CHECK(probe.conditional(cfg, e, params) == doctest::Approx(heat_bath_conditional(cfg, e, params)));
    }
}

TEST_CASE("one-sweep transition matrix fixes the FK distribution") {
    for (const Domain& d : {two_edge_path(), make_diamond_domain({1, 0}, 1)}) {
        for (const FKParams& params : {FKParams{0.75, 9.0, 3.0}, FKParams{0.4, 2.0, 1.0}, FKParams::free(0.5, 4.0)}) {
            const auto pi = fk_distribution(d, params);
            const auto m = sweep_transition_matrix(d, params);
            double worst = 0.0;
            for (std::size_t t = 0; t < pi.size(); ++t) {
                double v = 0.0;
                for (std::size_t s = 0; s < pi.size(); ++s) v += pi[s] * m[s][t];
                worst = std::max(worst, std::abs(v - pi[t]));
            }
            CHECK(worst < 1e-12);
            for (const auto& row : m) CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("single-edge kernel satisfies detailed balance") {
    const Domain d = two_edge_path();
    const FKParams params{0.3, 5.0, 2.0};
    for (std::uint64_t s = 0; s < 4; ++s)
        for (int e = 0; e < 2; ++e) {
            const std::uint64_t t = s ^ (std::uint64_t{1} << e);
            const auto cs = BondConfig::from_bits(d, s);
            const auto ct = BondConfig::from_bits(d, t);
            const double ps = heat_bath_conditional(cs, e, params);
            const double pt = heat_bath_conditional(ct, e, params);
            const bool s_open = (s >> e) & 1u;
            const double s_to_t = s_open ? 1.0 - ps : ps;
            const double t_to_s = s_open ? pt : 1.0 - pt;
            CHECK(fk_weight(cs, params) * s_to_t == doctest::Approx(fk_weight(ct, params) * t_to_s));
        }
}

TEST_CASE("sampler edge marginals match exact enumeration") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    const FKParams params = FKParams::free(2.0 / 3.0, 4.0);
    const auto pi = fk_distribution(d, params);
    std::vector<double> exact(4, 0.0);
    for (std::size_t s = 0; s < pi.size(); ++s)
        for (int e = 0; e < 4; ++e)
            if ((s >> e) & 1u) exact[static_cast<std::size_t>(e)] += pi[s];

    // batch means for the standard error
    const int batches = 50, per_batch = 2000;
    BondConfig cfg(d);
    ChainRng rng(11, Stream::EdgeCoin);
    std::vector<std::vector<double>> means(4);
    for (int b = 0; b < batches; ++b) {
        std::vector<int> counts(4, 0);
        for (int t = 0; t < per_batch; ++t) {
            heat_bath_sweep(cfg, params, rng);
            for (int e = 0; e < 4; ++e) counts[static_cast<std::size_t>(e)] += cfg.open[static_cast<std::size_t>(e)];
        }
        for (int e = 0; e < 4; ++e) means[static_cast<std::size_t>(e)].push_back(counts[static_cast<std::size_t>(e)] / double(per_batch));
    }
    for (int e = 0; e < 4; ++e) {
        const auto& m = means[static_cast<std::size_t>(e)];
        const double mean = std::accumulate(m.begin(), m.end(), 0.0) / batches;
        double var = 0.0;
        for (double x : m) var += (x - mean) * (x - mean);
        const double se = std::sqrt(var / (batches - 1) / batches);
        CHECK(std::abs(mean - exact[static_cast<std::size_t>(e)]) < 3.0 * se + 1e-9);
    }
}

TEST_CASE("p close to one opens every edge") {
    const Domain d = make_diamond_domain({0, 0}, 4);
    BondConfig cfg(d);
    ChainRng rng(3, Stream::EdgeCoin);
    heat_bath_sweep(cfg, FKParams{1.0 - 1e-12, 4.0, 4.0}, rng);
    CHECK(cfg.open_count() == static_cast<int>(cfg.open.size()));
}

TEST_CASE("sampler determinism") {
    const Domain d = make_box_domain(8);
    const FKParams params = FKParams::wired(critical_p(10.0), 10.0);
    const auto a = run_sampler(d, params, 50, 10, 99, false, -1);
    const auto b = run_sampler(d, params, 50, 10, 99, false, -1);
    CHECK(a.edge_marginals == b.edge_marginals);
    CHECK(a.cluster_size_histogram == b.cluster_size_histogram);
    const auto c = run_sampler(d, params, 50, 10, 100, false, -1);
    CHECK(a.edge_marginals != c.edge_marginals);
}

TEST_CASE("holley condition examples") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    const FKParams wired{0.75, 9.0, 1.0}, free{0.75, 9.0, 9.0};
    const auto ok = holley_check(free, wired, d);
    CHECK(ok.holds);
    CHECK(ok.pairs_checked == 256);
    CHECK_FALSE(holley_check(wired, free, d).holds);

    const auto same = holley_check(free, free, d);
    CHECK(same.holds);
    CHECK(same.worst_slack == doctest::Approx(0.0));

    const RationalFKParams lo{mpq_class(2, 3), 4, 4}, hi{mpq_class(2, 3), 4, 1};
    CHECK(holley_check(lo, hi, d).holds);
    CHECK_FALSE(holley_check(hi, lo, d).holds);
    CHECK_THROWS_AS(holley_check(free, wired, make_diamond_domain({1, 0}, 3)), std::length_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(FKParams({0.0, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FKParams({0.5, -1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(SymbolicFKParams::coupled(0), std::invalid_argument);
    CHECK(SymbolicFKParams::coupled(-1).q_b == Laurent::monomial(-4) + 1);
}
