// Deterministic seed derivation and uniform sampling. A single master seed
// fans out into independent per-trial and per-purpose streams so Monte Carlo
// results are byte-identical regardless of worker count or scheduling.
#pragma once

#include <cstdint>
#include <random>

namespace qsdc {

/// splitmix64 step — the standard 64-bit mixer. Used only to derive child
/// seeds; the sampling engine itself is std::mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for stream `label` under `base`. derive(derive(m, i), j) gives
/// a two-level hierarchy: master -> trial -> purpose.
inline std::uint64_t derive(std::uint64_t base, std::uint64_t label) {
    return splitmix64(base ^ splitmix64(label));
}

/// Uniform double in [0, 1) with full 53-bit resolution.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

}  // namespace qsdc
