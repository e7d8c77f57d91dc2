#include "houseqa/rng.hpp"

#include <array>
#include <cassert>

namespace houseqa {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

std::uint64_t RngStream::bounded(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<std::int64_t>(bounded(span));
}

double RngStream::uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) { return uniform_real() < p; }

namespace {

std::uint64_t mix_label(std::uint64_t h, std::string_view label) {
    // FNV-1a over the label bytes plus a separator, then one splitmix round
    // so consecutive labels land far apart.
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
    std::uint64_t s = h;
    return splitmix64(s);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::string_view> labels) {
    std::uint64_t h = master_seed ^ 0x9e3779b97f4a7c15ull;
    for (std::string_view l : labels) h = mix_label(h, l);
    return h;
}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          const std::vector<std::string>& labels) {
    std::uint64_t h = master_seed ^ 0x9e3779b97f4a7c15ull;
    for (const std::string& l : labels) h = mix_label(h, l);
    return h;
}

RngStream derive_stream(std::uint64_t master_seed,
                        std::initializer_list<std::string_view> labels) {
    return RngStream(derive_seed(master_seed, labels));
}

void Fnv1a::update(std::string_view bytes) {
    for (unsigned char c : bytes) {
        hash_ ^= c;
        hash_ *= 1099511628211ull;
    }
}

void Fnv1a::update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        hash_ ^= (v >> (i * 8)) & 0xff;
        hash_ *= 1099511628211ull;
    }
}

std::string to_hex_u64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string Fnv1a::hex() const { return to_hex_u64(hash_); }

}  // namespace houseqa
