#ifndef HFS_RNG_HPP
#define HFS_RNG_HPP

#include <cstdint>
#include <random>

namespace hfs {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded random source. mt19937_64 raw output is fully specified by the
// standard, so results are portable; bounded draws use rejection sampling
// instead of std distributions (whose output is implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n). n > 0.
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

    bool coin() { return (eng_() & 1u) != 0; }

    // Independent stream for the given index, derived from the original seed.
    // Splitting by sample index makes fan-out runs reproduce the serial order.
    Rng split(uint64_t index) const {
        return Rng(splitmix64(seed_ ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
    }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace hfs

#endif
