#include "fclsh/rng.hpp"

#include "fclsh/errors.hpp"

#include <cmath>

namespace fclsh {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

Rng::Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

Rng Rng::stream(std::string_view label) const {
    return Rng(splitmix64(seed_ ^ fnv1a(label)));
}

Rng Rng::stream(std::string_view label, uint64_t index) const {
    return Rng(splitmix64(seed_ ^ fnv1a(label) ^ splitmix64(index + 1)));
}

uint64_t Rng::next_u64() { return eng_(); }

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw UsageError("rng: zero bound");
    // rejection sampling, no modulo bias
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

double Rng::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * unit() - 1.0;
        v = 2.0 * unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

} // namespace fclsh
