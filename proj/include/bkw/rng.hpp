#pragma once

#include <cstdint>
#include <random>

namespace bkw {

// Substream tags. A root seed plus a tag plus structural keys (chain index,
// loop index, internal-vertex index) determines every random number used by
// the library, so results never depend on scheduling or worker count.
enum class Stream : std::uint64_t {
    EdgeCoin = 0x45444745u,
    OrientationCoin = 0x4f52494eu,
    SplitCoin = 0x53504c54u,
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_key(std::uint64_t a, std::uint64_t b);

// Uniform double in [0,1) from the top 53 bits.
inline double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stateless keyed stream: uniform(k) is a fixed function of (seed, k).
class KeyedStream {
public:
    KeyedStream(std::uint64_t root, Stream tag, std::uint64_t index = 0);

    double uniform(std::uint64_t key) const;
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Sequential stream for Markov chains.
class ChainRng {
public:
    ChainRng(std::uint64_t root, Stream tag, std::uint64_t index = 0);

    double uniform() { return unit_interval(engine_()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace bkw
