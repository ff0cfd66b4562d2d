#ifndef GESS_RNG_HPP
#define GESS_RNG_HPP

#include <array>
#include <cstdint>

namespace gess {

// xoshiro256++ with splitmix64 seeding. Each sampler chain owns one stream,
// keyed by (seed, group, chain), so results do not depend on how chains are
// scheduled across worker threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0, 0) {}
    Rng(std::uint64_t seed, std::uint64_t group, std::uint64_t chain);

    std::uint64_t next_u64();

    /// Uniform on (0,1), both endpoints excluded.
    double uniform01();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal (Box-Muller, spare cached).
    double normal();

    bool operator==(const Rng& other) const = default;

private:
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace gess

#endif
