#pragma once

// Seeded sampling with a fixed, platform-independent draw: mt19937_64 words
// with rejection, rather than std::uniform_int_distribution, whose output
// is implementation-defined.

#include "odo/rational.hpp"

#include <cstdint>
#include <random>

namespace odo {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            const std::uint64_t w = eng_();
            if (w < limit) return w % n;
        }
    }

    // Uniform in [lo, hi].
    Integer uniform(const Integer& lo, const Integer& hi) {
        const Integer span = hi - lo + 1;
        const std::size_t bits = bit_length(span);
        for (;;) {
            Integer r = 0;
            std::size_t have = 0;
            while (have < bits) {
                mpz_class w;
                const std::uint64_t word = eng_();
                mpz_import(w.get_mpz_t(), 1, 1, sizeof word, 0, 0, &word);
                r = (r << 64) + w;
                have += 64;
            }
            r >>= static_cast<unsigned long>(have - bits);
            if (r < span) return lo + r;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace odo
