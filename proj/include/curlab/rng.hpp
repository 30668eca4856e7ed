#pragma once

#include <cstdint>

namespace curlab {

/// SplitMix64 finalizer. Used both as the transcript RNG and for deriving
/// fixed pseudo-random truth tables.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Stream key for one (seed, trial, role) triple. Each random decision in a
/// simulation owns one role id, so draws are independent of evaluation order.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t role) {
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (trial + kGolden));
    k = mix64(k ^ (role + 0xD1B54A32D192ED03ULL));
    return k;
}

/// The counter'th 64-bit block of a stream.
constexpr std::uint64_t stream_draw(std::uint64_t stream, std::uint64_t counter) {
    return mix64(stream + counter * kGolden);
}

/// Role ids: kind selects the game-flow step, a/b index agents/coordinates.
enum class DrawKind : std::uint64_t { Bit = 0, Message = 1, Reply = 2, Guess = 3 };

constexpr std::uint64_t role_id(DrawKind kind, std::uint64_t a, std::uint64_t b = 0) {
    return (static_cast<std::uint64_t>(kind) << 32) | (a << 16) | b;
}

}  // namespace curlab
