#pragma once

#include <cstdint>
#include <string_view>

namespace prism {

// splitmix64; used to derive independent stream seeds from one master seed.
std::uint64_t mix_seed(std::uint64_t seed);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);
std::uint64_t hash_string(std::string_view s);

// Seeded generator with pinned algorithms (xoshiro-style core, Box-Muller
// normals) so that identical seeds give identical streams on every platform,
// independent of the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // uniform in [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    // standard normal
    double normal();
    double normal(double mu, double sigma);
    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n);

    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace prism
