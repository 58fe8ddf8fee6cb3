#pragma once

#include "bkw/height.hpp"
#include "bkw/random_cluster.hpp"
#include "bkw/six_vertex.hpp"
#include "bkw/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bkw {

using json = nlohmann::ordered_json;

// Decimal string with 17 significant digits.
std::string format_double(double v);

json to_json(const CheckResult& c, bool timing);
json to_json(const VerificationReport& r, bool timing);
json to_json(const HolleyResult& r);
json to_json(const FKParams& p);
json to_json(const SamplerReport& r);
json to_json(const CoupledParams& p);
json drift_summary(const DriftResult& r);

// sample,n,xi,height
void write_drift_csv(std::ostream& out, const DriftResult& r);

// Six-vertex dump: one JSON header line, then one hex line per configuration.
// Edge e occupies bits 2e (1 = east/north) and 2e+1 (reserved, zero) of a
// little-endian byte string.
void write_6v_dump(std::ostream& out, const Domain& domain, const std::vector<SixVertexConfig>& configs);
std::vector<SixVertexConfig> read_6v_dump(std::istream& in, const Domain& domain);
std::string pack_arrows(const std::vector<std::uint8_t>& arrows);
std::vector<std::uint8_t> unpack_arrows(const std::string& hex, std::size_t edges);

// One JSON object per bond configuration with its loops.
void write_loops_jsonl(std::ostream& out, const Domain& domain, int max_edges = 14);

// Writes text followed by a newline to `path`, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace bkw
