#include "bkw/rng.hpp"

namespace bkw {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a ^ (b * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull);
    splitmix64(state);
    return splitmix64(state);
}

KeyedStream::KeyedStream(std::uint64_t root, Stream tag, std::uint64_t index)
    : seed_(mix_key(mix_key(root, static_cast<std::uint64_t>(tag)), index)) {}

double KeyedStream::uniform(std::uint64_t key) const {
    return unit_interval(mix_key(seed_, key));
}

ChainRng::ChainRng(std::uint64_t root, Stream tag, std::uint64_t index)
    : engine_(mix_key(mix_key(root, static_cast<std::uint64_t>(tag)), index)) {}

}  // namespace bkw
