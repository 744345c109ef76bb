#pragma once

#include <cstdint>
#include <random>

namespace amex {

// splitmix64 finalizer; decorrelates seeds derived from small integers.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic combination of a base seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 0x6a09e667f3bcc909ULL));
}

// Bounded draw used for tie-breaking and rollout action picks.  The slight
// modulo bias is irrelevant at the ranges involved (< a dozen choices) and
// keeps the draw sequence identical across standard libraries.
template <class Rng>
std::size_t draw_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

}  // namespace amex
