#include "bkw/report.hpp"

#include "bkw/loops.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace bkw {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const CheckResult& c, bool timing) {
    json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["detail"] = c.detail;
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (timing) j["seconds"] = format_double(c.seconds);
    return j;
}

json to_json(const VerificationReport& r, bool timing) {
    json j;
    j["domain"] = json::parse(r.domain);
    j["passed"] = r.passed();
    j["checks"] = json::array();
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c, timing));
    if (timing) {
        double total = 0.0;
        for (const auto& c : r.checks) total += c.seconds;
        j["wall_seconds"] = format_double(total);
    }
    return j;
}

json to_json(const HolleyResult& r) {
    json j;
    j["holds"] = r.holds;
    j["pairs_checked"] = r.pairs_checked;
    j["worst_slack"] = format_double(r.worst_slack);
    if (!r.holds) {
        j["witness_a"] = r.witness_a;
        j["witness_b"] = r.witness_b;
    }
    return j;
}

json to_json(const FKParams& p) {
    json j;
    j["p"] = format_double(p.p);
    j["q"] = format_double(p.q);
    j["q_b"] = format_double(p.q_b);
    return j;
}

json to_json(const SamplerReport& r) {
    json j;
    j["seed"] = r.seed;
    j["sweeps"] = r.sweeps;
    j["burn_in"] = r.burn_in;
    j["params"] = to_json(r.params);
    j["origin_vertex"] = r.origin_vertex;
    j["origin_boundary_frequency"] = format_double(r.origin_boundary_frequency);
    double mean = 0.0;
    for (double m : r.edge_marginals) mean += m;
    if (!r.edge_marginals.empty()) mean /= static_cast<double>(r.edge_marginals.size());
    j["mean_edge_density"] = format_double(mean);
    json hist = json::array();
    for (std::size_t s = 0; s < r.cluster_size_histogram.size(); ++s)
        if (r.cluster_size_histogram[s]) hist.push_back({s, r.cluster_size_histogram[s]});
    j["cluster_size_histogram"] = hist;
    return j;
}

json to_json(const CoupledParams& p) {
    json j;
    j["lambda"] = format_double(p.lambda);
    j["c"] = format_double(p.c);
    j["sqrt_q"] = format_double(p.sqrt_q);
    j["q"] = format_double(p.q);
    j["p_c"] = format_double(p.p);
    j["q_b"] = format_double(p.q_b);
    return j;
}

json drift_summary(const DriftResult& r) {
    const auto& o = r.options;
    json j;
    j["q"] = format_double(o.q);
    j["lambda"] = format_double(o.lambda);
    j["box"] = o.box;
    j["samples"] = o.samples;
    j["chains"] = o.chains;
    j["burn_in"] = o.burn_in;
    j["thin"] = o.thin;
    j["seed"] = o.seed;
    j["params"] = to_json(r.params);
    j["count"] = r.count;
    j["mean"] = format_double(r.mean);
    j["stderr"] = format_double(r.stderr_);
    j["tanh_lambda"] = format_double(r.tanh_lambda);
    j["z_score"] = format_double(r.stderr_ > 0 ? (r.mean - r.tanh_lambda) / r.stderr_ : 0.0);
    j["mean_sequence_length"] = format_double(r.mean_sequence_length);
    return j;
}

void write_drift_csv(std::ostream& out, const DriftResult& r) {
    out << "sample,n,xi,height\n";
    for (const auto& row : r.rows) out << row.sample << ',' << row.n << ',' << row.xi << ',' << row.height << '\n';
}

std::string pack_arrows(const std::vector<std::uint8_t>& arrows) {
    std::vector<std::uint8_t> bytes((2 * arrows.size() + 7) / 8, 0);
    for (std::size_t e = 0; e < arrows.size(); ++e)
        if (arrows[e]) bytes[(2 * e) / 8] |= static_cast<std::uint8_t>(1u << ((2 * e) % 8));
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (auto b : bytes) {
        s.push_back(hex[b >> 4]);
        s.push_back(hex[b & 15]);
    }
    return s;
}

std::vector<std::uint8_t> unpack_arrows(const std::string& hex, std::size_t edges) {
    if (hex.size() != 2 * ((2 * edges + 7) / 8)) throw std::invalid_argument("arrow bitmap has the wrong length");
    auto nibble = [](char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument("bad hex digit in arrow bitmap");
    };
    std::vector<std::uint8_t> arrows(edges, 0);
    for (std::size_t e = 0; e < edges; ++e) {
        const std::size_t bitpos = 2 * e;
        const int byte = nibble(hex[2 * (bitpos / 8)]) * 16 + nibble(hex[2 * (bitpos / 8) + 1]);
        arrows[e] = static_cast<std::uint8_t>((byte >> (bitpos % 8)) & 1);
        if ((byte >> (bitpos % 8 + 1)) & 1) throw std::invalid_argument("reserved bit set in arrow bitmap");
    }
    return arrows;
}

void write_6v_dump(std::ostream& out, const Domain& domain, const std::vector<SixVertexConfig>& configs) {
    json header;
    header["format"] = "bkw-6v";
    header["version"] = 1;
    header["domain"] = json::parse(domain.descriptor_json());
    header["bits_per_edge"] = 2;
    header["configs"] = configs.size();
    json edges = json::array();
    for (const auto& e : domain.medial_edges())
        edges.push_back({e.start.a, e.start.b, e.axis == Axis::Horizontal ? "h" : "v"});
    header["edges"] = edges;
    out << header.dump() << '\n';
    for (const auto& c : configs) out << pack_arrows(c.arrow) << '\n';
}

std::vector<SixVertexConfig> read_6v_dump(std::istream& in, const Domain& domain) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty six-vertex dump");
    const json header = json::parse(line);
    if (header.at("format") != "bkw-6v") throw std::invalid_argument("not a six-vertex dump");
    const auto edges = header.at("edges");
    const auto medial = domain.medial_edges();
    if (edges.size() != medial.size()) throw std::invalid_argument("dump belongs to a different domain");
    for (std::size_t e = 0; e < medial.size(); ++e) {
        const auto& h = edges[e];
        if (h[0] != medial[e].start.a || h[1] != medial[e].start.b ||
            (h[2] == "h") != (medial[e].axis == Axis::Horizontal))
            throw std::invalid_argument("dump edge order differs from the domain");
    }
    std::vector<SixVertexConfig> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back({&domain, unpack_arrows(line, medial.size())});
    }
    if (out.size() != header.at("configs").get<std::size_t>()) throw std::invalid_argument("truncated dump");
    return out;
}

void write_loops_jsonl(std::ostream& out, const Domain& domain, int max_edges) {
    const auto n = domain.primal_edges().size();
    if (static_cast<int>(n) > max_edges) throw std::length_error("too many primal edges to dump all configurations");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const BondConfig cfg = BondConfig::from_bits(domain, bits);
        const LoopConfig lc = extract_loops(cfg);
        const auto stats = loop_stats(lc);
        json j;
        j["bits"] = bits;
        j["l"] = stats.l;
        j["l_b"] = stats.l_b;
        json loops = json::array();
        for (const auto& loop : lc.loops) {
            json l;
            l["boundary"] = loop.boundary;
            l["edges"] = loop.edges;
            loops.push_back(l);
        }
        j["loops"] = loops;
        out << j.dump() << '\n';
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text << '\n';
}

}  // namespace bkw
