#pragma once

#include <cstdlib>
#include <random>

namespace mdx_test {

// Deterministic seed for randomized property tests, overridable via MDX_SEED.
inline unsigned long test_seed() {
    if (const char* env = std::getenv("MDX_SEED")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42ul;
}

inline std::mt19937_64 make_rng(unsigned long salt = 0) { return std::mt19937_64(test_seed() + salt); }

}  // namespace mdx_test
