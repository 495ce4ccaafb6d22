#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fclsh {

uint64_t splitmix64(uint64_t x);

/// Deterministic random source. A single root seed fans out into named
/// sub-streams so that, say, the mapping draw of partition 3 does not move
/// when an unrelated component consumes more randomness.
///
/// All distributions are hand-rolled on top of mt19937_64 output so results
/// are identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed);

    /// Independent stream derived from this stream's seed and a label.
    Rng stream(std::string_view label) const;
    /// Numbered variant for per-run / per-part streams.
    Rng stream(std::string_view label, uint64_t index) const;

    uint64_t seed() const { return seed_; }

    uint64_t next_u64();
    /// Uniform in [0, bound). bound must be nonzero.
    uint64_t below(uint64_t bound);
    /// Uniform in [0, 1).
    double unit();
    /// Standard normal via Box-Muller.
    double gaussian();
    bool coin() { return (next_u64() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t seed_;
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fclsh
