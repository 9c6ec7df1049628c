#pragma once

#include <cstdint>
#include <utility>

namespace rigidlab {

// Deterministic 64-bit generator (splitmix64). Every randomized routine in
// the library takes an explicit seed and derives its stream from this, so
// results are reproducible across platforms and standard-library versions.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Lemire reduction; deterministic, bias < 2^-64.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives an independent child seed; used to give sub-tasks (retries, trials,
// restarts) their own streams without correlating them.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    Prng g(base ^ (0x632be59bd9b4e019ull * (stream + 1)));
    return g.next();
}

} // namespace rigidlab
