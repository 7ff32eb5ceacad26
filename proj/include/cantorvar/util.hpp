#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantorvar {

// Desk-scale limits. Evaluators check these and throw instead of grinding.
inline constexpr long long kMaxCellsPerAxis = 32;
inline constexpr long long kMaxOracleSummands = 10'000'000;
inline constexpr long long kMaxActionPairs = 100'000;

/// Thrown when an instance exceeds a desk-scale cap (CLI maps this to exit code 3).
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

inline long long ipow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// --- deterministic seed derivation -----------------------------------------
//
// Per-trial seeds come from the master seed through splitmix64, so serial and
// parallel sweeps see identical streams: seed(trial) = splitmix64 applied to
// master + (trial+1) * golden gamma.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace cantorvar
