#include "bkw/verify.hpp"

#include "bkw/height.hpp"
#include "bkw/loops.hpp"
#include "bkw/random_cluster.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

namespace bkw {

namespace {

using Clock = std::chrono::steady_clock;

void check_fk_budget(const Domain& domain, int max_edges) {
    const auto n = domain.primal_edges().size();
    if (static_cast<int>(n) > max_edges || n >= 63)
        throw std::length_error("domain has " + std::to_string(n) + " primal edges, enumeration budget is " +
                                std::to_string(max_edges));
}

// Runs fn(begin, end, worker) over [0, n) split into contiguous ranges.
void parallel_ranges(std::uint64_t n, int workers, const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
    workers = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), n)));
    if (workers == 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t b = n * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t e = n * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
        pool.emplace_back(fn, b, e, w);
    }
    for (auto& t : pool) t.join();
}

std::vector<int> internal_loops(const LoopConfig& lc) {
    std::vector<int> out;
    for (std::size_t k = 0; k < lc.loops.size(); ++k)
        if (!lc.loops[k].boundary) out.push_back(static_cast<int>(k));
    return out;
}

// Visits every (omega, xi) pair; xi runs over orientations of internal loops.
void for_each_oriented(const Domain& domain, std::uint64_t begin, std::uint64_t end,
                       const std::function<void(const BondConfig&, const OrientedLoopConfig&)>& visit) {
    for (std::uint64_t bits = begin; bits < end; ++bits) {
        const BondConfig cfg = BondConfig::from_bits(domain, bits);
        const LoopConfig lc = extract_loops(cfg);
        const auto inner = internal_loops(lc);
        if (inner.size() >= 31) throw std::length_error("too many internal loops to enumerate orientations");
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << inner.size()); ++m) {
            std::vector<std::int8_t> xi(lc.loops.size(), 1);
            for (std::size_t k = 0; k < inner.size(); ++k)
                if ((m >> k) & 1u) xi[static_cast<std::size_t>(inner[k])] = -1;
            visit(cfg, orient_loops(lc, std::move(xi)));
        }
    }
}

template <class W>
FiniteDistribution<W> enumerate_fk(const Domain& domain, const VerifyOptions& options,
                                   const std::function<W(const BondConfig&, const OrientedLoopConfig&)>& weight,
                                   bool arrows_only) {
    check_fk_budget(domain, options.max_fk_edges);
    const std::uint64_t n = std::uint64_t{1} << domain.primal_edges().size();
    std::vector<FiniteDistribution<W>> parts(static_cast<std::size_t>(std::max(options.workers, 1)));
    parallel_ranges(n, options.workers, [&](std::uint64_t b, std::uint64_t e, int w) {
        auto& part = parts[static_cast<std::size_t>(w)];
        for_each_oriented(domain, b, e, [&](const BondConfig& cfg, const OrientedLoopConfig& olc) {
            part.add(arrows_only ? arrow_key(split_inverse(olc)) : oriented_key(olc), weight(cfg, olc));
        });
    });
    FiniteDistribution<W> out;
    for (const auto& p : parts) out.merge(p);
    return out;
}

// Visits every (six-vertex config, split outcome) pair.
void for_each_split(const Domain& domain, const VerifyOptions& options, int worker, int workers,
                    const std::function<void(const SixVertexConfig&, const SplitResult&)>& visit) {
    EnumerationOptions eo;
    eo.partition_count = workers;
    eo.partition_index = worker;
    enumerate_6v(
        domain,
        [&](const SixVertexConfig& cfg) {
            const auto cv = c_vertices(cfg);
            if (static_cast<int>(cv.size()) > options.max_c_vertices)
                throw std::length_error("configuration has " + std::to_string(cv.size()) +
                                        " c-vertices, budget is " + std::to_string(options.max_c_vertices));
            std::vector<bool> choice(domain.primal_edges().size(), false);
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << cv.size()); ++m) {
                for (std::size_t k = 0; k < cv.size(); ++k) choice[static_cast<std::size_t>(cv[k])] = (m >> k) & 1u;
                visit(cfg, split_with_choices(cfg, choice));
            }
        },
        eo);
}

template <class W>
FiniteDistribution<W> enumerate_splits(const Domain& domain, const VerifyOptions& options,
                                       const std::function<W(const SixVertexConfig&, const SplitResult&)>& weight) {
    const int workers = std::max(options.workers, 1);
    std::vector<FiniteDistribution<W>> parts(static_cast<std::size_t>(workers));
    parallel_ranges(static_cast<std::uint64_t>(workers), workers, [&](std::uint64_t b, std::uint64_t e, int) {
        for (std::uint64_t w = b; w < e; ++w)
            for_each_split(domain, options, static_cast<int>(w), workers,
                           [&](const SixVertexConfig& cfg, const SplitResult& r) {
                               parts[w].add(oriented_key(r.loops), weight(cfg, r));
                           });
    });
    FiniteDistribution<W> out;
    for (const auto& p : parts) out.merge(p);
    return out;
}

template <class W>
FiniteDistribution<W> project(const FiniteDistribution<W>& oriented) {
    FiniteDistribution<W> out;
    for (const auto& [key, w] : oriented.weights) {
        const auto colon = key.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("not an oriented-loop key");
        out.add(key.substr(colon + 1), w);
    }
    return out;
}

std::string truncate(std::string s, std::size_t n = 240) {
    if (s.size() > n) s = s.substr(0, n) + "...";
    return s;
}

CheckResult comparison_check(const std::string& name, const ComparisonReport& r, Clock::time_point start) {
    CheckResult c;
    c.name = name;
    c.passed = r.equal;
    c.detail = "support " + std::to_string(r.support_a) + "/" + std::to_string(r.support_b);
    if (!r.equal) c.detail += ", " + truncate(r.witness_detail);
    c.witness = r.witness;
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return c;
}

CheckResult count_check(const std::string& name, std::uint64_t failures, std::uint64_t checked,
                        Clock::time_point start) {
    CheckResult c;
    c.name = name;
    c.passed = failures == 0;
    c.detail = std::to_string(checked) + " checked, " + std::to_string(failures) + " failed";
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return c;
}

}  // namespace

SymbolicDistribution oriented_fk_distribution(const Domain& domain, int sign, const VerifyOptions& options) {
    const SymbolicFKParams params = SymbolicFKParams::coupled(sign);
    const Laurent sqrt_q = params.odds;
    return enumerate_fk<Laurent>(
        domain, options,
        [&](const BondConfig& cfg, const OrientedLoopConfig& olc) {
            int net = 0, inner = 0;
            for (std::size_t k = 0; k < olc.xi.size(); ++k) {
                if (olc.base.loops[k].boundary) continue;
                net += olc.xi[k];
                ++inner;
            }
            const Laurent w = fk_weight(cfg, params).shifted(2 * sign * net);
            return w.divide_exact(sqrt_q.pow(static_cast<unsigned>(inner)));
        },
        false);
}

SymbolicDistribution pushforward_fk_to_6v(const Domain& domain, int sign, const VerifyOptions& options) {
    return project(oriented_fk_distribution(domain, sign, options));
}

SymbolicDistribution sixv_distribution(const Domain& domain, const VerifyOptions& options) {
    (void)options;
    SymbolicDistribution out;
    enumerate_6v(domain, [&](const SixVertexConfig& cfg) { out.add(arrow_key(cfg), sixv_weight(cfg)); });
    return out;
}

SymbolicDistribution pushforward_6v_to_fk(const Domain& domain, int sign, const VerifyOptions& options) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    // c^{n56} prod (x^{+-1} / c) = x^{n_acw - n_cw}
    return enumerate_splits<Laurent>(domain, options, [&](const SixVertexConfig&, const SplitResult& r) {
        return Laurent::monomial(sign * (r.record.anticlockwise - r.record.clockwise));
    });
}

SymbolicDistribution project_to_arrows(const SymbolicDistribution& oriented) { return project(oriented); }
FloatDistribution project_to_arrows(const FloatDistribution& oriented) { return project(oriented); }

SymbolicDistribution substitute_inverse(const SymbolicDistribution& d) {
    SymbolicDistribution out;
    for (const auto& [k, w] : d.weights) out.weights.emplace(k, w.substitute_inverse());
    return out;
}

FloatDistribution oriented_fk_distribution_float(const Domain& domain, double lambda, const VerifyOptions& options) {
    const double sqrt_q = 2.0 * std::cosh(lambda);
    const FKParams params{sqrt_q / (1.0 + sqrt_q), sqrt_q * sqrt_q, std::exp(lambda) * sqrt_q};
    const double p_acw = anticlockwise_probability(lambda);
    return enumerate_fk<double>(
        domain, options,
        [&](const BondConfig& cfg, const OrientedLoopConfig& olc) {
            double w = fk_weight(cfg, params);
            for (std::size_t k = 0; k < olc.xi.size(); ++k)
                if (!olc.base.loops[k].boundary) w *= olc.xi[k] == 1 ? p_acw : 1.0 - p_acw;
            return w;
        },
        false);
}

FloatDistribution pushforward_6v_to_fk_float(const Domain& domain, double lambda, const VerifyOptions& options) {
    const double c = 2.0 * std::cosh(lambda / 2.0);
    const double acw = std::exp(lambda / 2.0) / c;
    const double cw = std::exp(-lambda / 2.0) / c;
    return enumerate_splits<double>(domain, options, [&](const SixVertexConfig& cfg, const SplitResult& r) {
        return sixv_weight(cfg, c) * std::pow(acw, r.record.anticlockwise) * std::pow(cw, r.record.clockwise);
    });
}

FloatDistribution evaluate(const SymbolicDistribution& d, double x) {
    FloatDistribution out;
    for (const auto& [k, w] : d.weights) out.weights.emplace(k, w.evaluate(x));
    return out;
}

ComparisonReport compare_distributions(const SymbolicDistribution& a, const SymbolicDistribution& b) {
    ComparisonReport r;
    r.support_a = a.size();
    r.support_b = b.size();
    const Laurent za = a.total();
    const Laurent zb = b.total();
    if (za.is_zero() || zb.is_zero()) throw std::invalid_argument("distribution with zero total weight");
    const double x0 = std::exp(0.5);
    const double za0 = za.evaluate(x0), zb0 = zb.evaluate(x0);
    auto check = [&](const std::string& key, const Laurent& wa, const Laurent& wb) {
        const Laurent diff = wa * zb - wb * za;
        if (diff.is_zero()) return;
        const double pa = wa.evaluate(x0) / za0, pb = wb.evaluate(x0) / zb0;
        const double rel = std::abs(pa - pb) / std::max({std::abs(pa), std::abs(pb), 1e-300});
        r.max_discrepancy = std::max(r.max_discrepancy, rel);
        if (r.equal) {
            r.equal = false;
            r.witness = key;
            r.witness_detail = "w_a Z_b - w_b Z_a = " + diff.to_string();
        }
    };
    const Laurent zero;
    for (const auto& [k, wa] : a.weights) {
        auto it = b.weights.find(k);
        check(k, wa, it == b.weights.end() ? zero : it->second);
    }
    for (const auto& [k, wb] : b.weights)
        if (!a.weights.count(k)) check(k, zero, wb);
    return r;
}

ComparisonReport compare_distributions(const FloatDistribution& a, const FloatDistribution& b, double rel_tol) {
    ComparisonReport r;
    r.support_a = a.size();
    r.support_b = b.size();
    const double za = a.total();
    const double zb = b.total();
    if (!(za > 0.0) || !(zb > 0.0)) throw std::invalid_argument("distribution with non-positive total weight");
    auto check = [&](const std::string& key, double wa, double wb) {
        const double lhs = wa * zb, rhs = wb * za;
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        const double rel = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
        r.max_discrepancy = std::max(r.max_discrepancy, rel);
        if (rel > rel_tol && r.equal) {
            r.equal = false;
            r.witness = key;
            char buf[160];
            std::snprintf(buf, sizeof buf, "p_a = %.17g, p_b = %.17g", wa / za, wb / zb);
            r.witness_detail = buf;
        }
    };
    for (const auto& [k, wa] : a.weights) {
        auto it = b.weights.find(k);
        check(k, wa, it == b.weights.end() ? 0.0 : it->second);
    }
    for (const auto& [k, wb] : b.weights)
        if (!a.weights.count(k)) check(k, 0.0, wb);
    return r;
}

CoupledParams verify_coupled_params(double q) {
    if (!(q >= 4.0) || !std::isfinite(q)) throw std::invalid_argument("coupled parameters need q >= 4");
    const double sqrt_q = std::sqrt(q);
    CoupledParams cp = CoupledParams::from_lambda(std::acosh(sqrt_q / 2.0));
    cp.sqrt_q = sqrt_q;
    cp.q = q;
    cp.p = critical_p(q);
    cp.q_b = std::exp(cp.lambda) * sqrt_q;
    const double c_direct = std::sqrt(2.0 + sqrt_q);
    if (std::abs(cp.c - c_direct) > 1e-12 * c_direct) throw std::logic_error("c^2 != 2 + sqrt(q)");
    if (cp.q_b < 1.0 || std::exp(-cp.lambda) * sqrt_q < 1.0) throw std::logic_error("boundary weight below 1");
    if (cp.q_b > q * (1.0 + 1e-12)) throw std::logic_error("boundary weight above q");
    return cp;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport verify_coupling(const Domain& domain, const CouplingCheckOptions& options) {
    VerificationReport rep;
    rep.domain = domain.descriptor_json();
    const auto& vo = options.verify;

    if (options.backend == Backend::Float) {
        for (double lambda : options.lambdas) {
            for (int sign : {1, -1}) {
                const double l = sign * lambda;
                char tag[64];
                std::snprintf(tag, sizeof tag, "[lambda=%g]", l);
                auto t0 = Clock::now();
                const auto fk = oriented_fk_distribution_float(domain, l, vo);
                const auto pushed = pushforward_6v_to_fk_float(domain, l, vo);
                rep.checks.push_back(comparison_check(std::string("split_pushforward") + tag,
                                                      compare_distributions(pushed, fk), t0));
                t0 = Clock::now();
                const auto mirrored = project_to_arrows(oriented_fk_distribution_float(domain, -l, vo));
                rep.checks.push_back(comparison_check(std::string("split_inverse_symmetry") + tag,
                                                      compare_distributions(project_to_arrows(fk), mirrored), t0));
            }
        }
        return rep;
    }

    auto t0 = Clock::now();
    {
        const Laurent x = Laurent::x();
        const Laurent c = x + Laurent::monomial(-1);
        const Laurent sqrt_q = Laurent::monomial(2) + Laurent::monomial(-2);
        const auto plus = SymbolicFKParams::coupled(1);
        const auto minus = SymbolicFKParams::coupled(-1);
        const bool ok = (c * c - 2 - sqrt_q).is_zero() && plus.q_b == Laurent::monomial(4) + 1 &&
                        minus.q_b == Laurent::monomial(-4) + 1 && plus.q == sqrt_q * sqrt_q;
        CheckResult cr;
        cr.name = "coupled_parameters";
        cr.passed = ok;
        cr.detail = "c = " + c.to_string() + ", sqrt(q) = " + sqrt_q.to_string() + ", q_b = " + plus.q_b.to_string();
        cr.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.checks.push_back(cr);
    }

    SymbolicDistribution fk_plus, fk_minus;
    for (int sign : {1, -1}) {
        t0 = Clock::now();
        auto fk = oriented_fk_distribution(domain, sign, vo);
        const auto pushed = pushforward_6v_to_fk(domain, sign, vo);
        rep.checks.push_back(comparison_check(sign > 0 ? "split_pushforward[+lambda]" : "split_pushforward[-lambda]",
                                              compare_distributions(pushed, fk), t0));
        if (sign > 0) {
            t0 = Clock::now();
            rep.checks.push_back(comparison_check("pushforward_consistency",
                                                  compare_distributions(project_to_arrows(pushed), project_to_arrows(fk)),
                                                  t0));
        }
        (sign > 0 ? fk_plus : fk_minus) = std::move(fk);
    }

    t0 = Clock::now();
    const auto six_plus = project_to_arrows(fk_plus);
    const auto six_minus = project_to_arrows(fk_minus);
    rep.checks.push_back(
        comparison_check("split_inverse_symmetry", compare_distributions(six_plus, six_minus), t0));

    t0 = Clock::now();
    rep.checks.push_back(comparison_check("split_inverse_substitution",
                                          compare_distributions(six_plus, substitute_inverse(six_plus)), t0));

    t0 = Clock::now();
    const auto six = sixv_distribution(domain, vo);
    rep.checks.push_back(comparison_check("sixv_weight_form", compare_distributions(six_plus, six), t0));

    t0 = Clock::now();
    rep.checks.push_back(
        comparison_check("fair_coin_limit", compare_distributions(evaluate(six_plus, 1.0), evaluate(six, 1.0)), t0));

    for (double lambda : options.lambdas) {
        t0 = Clock::now();
        char name[64];
        std::snprintf(name, sizeof name, "backend_agreement[lambda=%g]", lambda);
        const auto sym = evaluate(fk_plus, std::exp(lambda / 2.0));
        rep.checks.push_back(
            comparison_check(name, compare_distributions(sym, oriented_fk_distribution_float(domain, lambda, vo)), t0));
    }
    return rep;
}

std::uint64_t count_euler_failures(const Domain& domain, std::uint64_t* checked, int max_edges) {
    check_fk_budget(domain, max_edges);
    const std::uint64_t n = std::uint64_t{1} << domain.primal_edges().size();
    const int nv = static_cast<int>(domain.vertices().size());
    std::uint64_t bad = 0;
    for (std::uint64_t bits = 0; bits < n; ++bits) {
        const BondConfig cfg = BondConfig::from_bits(domain, bits);
        const auto cs = cluster_stats(cfg);
        const LoopConfig lc = extract_loops(cfg);
        const auto ls = loop_stats(lc);
        const bool ok = cs.k_dual + cs.k() == ls.l + 1 && cs.k_b == ls.l_b && nv - cs.o + cs.k_dual == cs.k() + 1 &&
                        loops_well_formed(lc);
        if (!ok) ++bad;
    }
    if (checked) *checked = n;
    return bad;
}

std::uint64_t count_winding_failures(const Domain& domain, std::uint64_t* checked, int max_c_vertices) {
    VerifyOptions vo;
    vo.max_c_vertices = max_c_vertices;
    std::uint64_t bad = 0, total = 0;
    for_each_split(domain, vo, 0, 1, [&](const SixVertexConfig& cfg, const SplitResult& r) {
        ++total;
        if (!check_winding_identity(r.loops, r.record) || split_inverse(r.loops).arrow != cfg.arrow) ++bad;
    });
    if (checked) *checked = total;
    return bad;
}

std::uint64_t count_winding_failures_random(const Domain& domain, int pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uint64_t bad = 0;
    for (int t = 0; t < pairs; ++t) {
        BondConfig cfg(domain);
        for (auto& e : cfg.open) e = static_cast<std::uint8_t>(coin(rng));
        const LoopConfig lc = extract_loops(cfg);
        std::vector<std::int8_t> xi(lc.loops.size(), 1);
        for (std::size_t k = 0; k < xi.size(); ++k)
            if (!lc.loops[k].boundary && coin(rng)) xi[k] = -1;
        const SixVertexConfig six = split_inverse(orient_loops(lc, std::move(xi)));
        std::vector<bool> choice(domain.primal_edges().size());
        for (std::size_t v = 0; v < choice.size(); ++v) choice[v] = coin(rng) != 0;
        const SplitResult r = split_with_choices(six, choice);
        if (!check_winding_identity(r.loops, r.record) || split_inverse(r.loops).arrow != six.arrow) ++bad;
    }
    return bad;
}

std::uint64_t count_height_mismatches(const Domain& domain, std::uint64_t* checked, int max_edges) {
    check_fk_budget(domain, max_edges);
    const FaceCoord o = domain.vertices()[static_cast<std::size_t>(central_vertex(domain))];
    std::uint64_t bad = 0, total = 0;
    for_each_oriented(domain, 0, std::uint64_t{1} << domain.primal_edges().size(),
                      [&](const BondConfig&, const OrientedLoopConfig& olc) {
                          ++total;
                          const auto ha = height_from_arrows(domain, loop_arrows(olc), o);
                          const auto hl = height_from_loops(olc, o);
                          if (ha.values != hl.values || !covering_property(ha)) ++bad;
                      });
    if (checked) *checked = total;
    return bad;
}

std::uint64_t count_height_mismatches_random(const Domain& domain, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    const FaceCoord o = domain.vertices()[static_cast<std::size_t>(central_vertex(domain))];
    std::uint64_t bad = 0;
    for (int t = 0; t < samples; ++t) {
        BondConfig cfg(domain);
        for (auto& e : cfg.open) e = static_cast<std::uint8_t>(coin(rng));
        const LoopConfig lc = extract_loops(cfg);
        std::vector<std::int8_t> xi(lc.loops.size(), 1);
        for (std::size_t k = 0; k < xi.size(); ++k)
            if (!lc.loops[k].boundary && coin(rng)) xi[k] = -1;
        const OrientedLoopConfig olc = orient_loops(lc, std::move(xi));
        const auto ha = height_from_arrows(domain, loop_arrows(olc), o);
        const auto hl = height_from_loops(olc, o);
        if (ha.values != hl.values) ++bad;
    }
    return bad;
}

VerificationReport verify_identities(const Domain& domain, const IdentityCheckOptions& options) {
    VerificationReport rep;
    rep.domain = domain.descriptor_json();
    std::uint64_t checked = 0;

    auto t0 = Clock::now();
    auto bad = count_euler_failures(domain, &checked, options.max_fk_edges);
    rep.checks.push_back(count_check("euler_relations", bad, checked, t0));

    t0 = Clock::now();
    bad = count_winding_failures(domain, &checked);
    rep.checks.push_back(count_check("winding_identity", bad, checked, t0));

    if (options.random_pairs > 0) {
        t0 = Clock::now();
        bad = count_winding_failures_random(domain, options.random_pairs, options.seed);
        rep.checks.push_back(
            count_check("winding_identity_random", bad, static_cast<std::uint64_t>(options.random_pairs), t0));
    }

    t0 = Clock::now();
    bad = count_height_mismatches(domain, &checked, options.max_fk_edges);
    rep.checks.push_back(count_check("height_oracle_equivalence", bad, checked, t0));
    return rep;
}

}  // namespace bkw
