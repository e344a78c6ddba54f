#ifndef COGNET_RANDOM_HPP
#define COGNET_RANDOM_HPP

// xoshiro256** seeded through splitmix64. Each Monte Carlo trial gets its
// own stream keyed by (seed, trial index), so results do not depend on how
// trials are spread over threads.

#include <cstdint>
#include <limits>

namespace cognet {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256
{
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto& w : s_)
            w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4]{};
};

/// Independent generator for one trial.
inline Xoshiro256 trial_stream(std::uint64_t seed, std::uint64_t trial)
{
    std::uint64_t key = seed;
    const std::uint64_t a = splitmix64(key);
    std::uint64_t mix = a ^ (trial * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return Xoshiro256(splitmix64(mix));
}

} // namespace cognet

#endif // COGNET_RANDOM_HPP
