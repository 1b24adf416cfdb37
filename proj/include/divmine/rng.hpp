#pragma once

#include <cstdint>
#include <random>

namespace divmine {

// Seeded generator used by every stochastic component. Bounded draws are done
// by rejection sampling on top of mt19937_64 instead of
// std::uniform_int_distribution, whose output differs between standard
// library implementations; identical seeds must replay identically anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_below(n)); }

    bool coin() { return engine_() & 1u; }

private:
    std::mt19937_64 engine_;
};

}  // namespace divmine
