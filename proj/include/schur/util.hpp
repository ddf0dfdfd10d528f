#pragma once

// Shared small utilities: error types, a stable 64-bit digest, a portable
// seeded RNG wrapper, and overflow-checked 64-bit integer arithmetic.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schur {

// Error hierarchy mirrored by the CLI exit codes:
//   parse_error -> 1, precondition_error -> 2, range_error -> 3,
//   property_error -> 4 (a checked invariant failed at runtime).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct property_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FNV-1a, the stated stable digest used for word hashes in rewrite traces.
// Stable across platforms and runs; documented in the README.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

// Default seed for every seeded battery; printed by the CLI on request.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDC0DEull;

// splitmix64-based generator. std::mt19937_64 is portable too, but the
// distributions are not; this keeps every sampled value reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound). Modulo bias is irrelevant at these sizes.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

private:
    std::uint64_t state_;
};

// Overflow-checked int64 helpers. Throw overflow_error so callers can
// escalate to arbitrary precision.
struct snf_overflow : std::overflow_error {
    snf_overflow() : std::overflow_error("integer overflow in exact arithmetic") {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw snf_overflow();
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw snf_overflow();
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw snf_overflow();
    return r;
}

// Euclidean-style remainder with result in [0, m); m > 0.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace schur
