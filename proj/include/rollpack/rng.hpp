#ifndef ROLLPACK_RNG_HPP
#define ROLLPACK_RNG_HPP

#include <cstdint>
#include <vector>

namespace rollpack {

// splitmix64. The seed fully determines the stream; parallel shards use
// derive(seed, shard) so sampled results are reproducible for any thread
// count. Reports record the generator name ("splitmix64") and seed.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static uint64_t derive(uint64_t seed, uint64_t stream) {
        return mix(seed ^ mix(stream ^ 0x632be59bd9b4e019ULL));
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // unbiased draw from [0, bound), bound >= 1
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    uint64_t state_;
};

template <class T>
void fisher_yates(std::vector<T>& v, SplitMix64& gen) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(gen.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace rollpack

#endif
