#pragma once

#include <cstdint>
#include <vector>

namespace dti {

// Small deterministic generator (splitmix64). Results depend only on the
// seed, never on the standard library's distribution internals, so seeded
// runs are reproducible across compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derives an independent stream, e.g. one per ensemble member.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        Rng r(seed);
        r.state_ ^= 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0,n); n must be > 0.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

}  // namespace dti
