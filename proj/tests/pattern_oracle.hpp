#pragma once

// Independent enumeration oracle for translated pattern sets: every depth-D
// prefix is shifted by plain integer arithmetic and checked digit by digit.

#include "odo/pattern.hpp"
#include "odo/rng.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace odo::test {

// Digits of (v mod beta_depth) by repeated division.
inline std::vector<unsigned> digits_of(Integer v, const BaseSeq& base, std::size_t depth) {
    Integer beta = 1;
    for (std::size_t i = 1; i <= depth; ++i) beta *= base.alpha(i);
    v %= beta;
    if (v < 0) v += beta;
    std::vector<unsigned> out;
    for (std::size_t i = 1; i <= depth; ++i) {
        out.push_back(static_cast<unsigned>(Integer(v % base.alpha(i)).get_ui()));
        v /= base.alpha(i);
    }
    return out;
}

inline Integer beta_of(const BaseSeq& base, std::size_t depth) {
    Integer beta = 1;
    for (std::size_t i = 1; i <= depth; ++i) beta *= base.alpha(i);
    return beta;
}

struct Instance {
    MeasureSeq ms;
    std::map<std::size_t, DigitSet> constraints;
    std::size_t depth;
};

// Free-tail pattern whose constraints live in 1..depth.
inline Instance random_instance(Rng& rng, std::size_t max_depth) {
    const bool mixed = rng.below(2) == 1;
    const BaseSeq base = mixed ? BaseSeq::with_prefix({3, 2, 5}, 2) : BaseSeq::constant(2);
    const std::size_t depth = 1 + rng.below(max_depth);
    std::vector<std::vector<Rational>> vectors;
    for (std::size_t i = 1; i <= depth; ++i) {
        std::vector<Integer> w;
        Integer total = 0;
        for (unsigned a = 0; a < base.alpha(i); ++a) {
            w.push_back(rng.uniform(Integer(1), Integer(9)));
            total += w.back();
        }
        std::vector<Rational> v;
        for (const auto& x : w) v.emplace_back(x, total);
        for (auto& x : v) x.canonicalize();
        vectors.push_back(v);
    }
    MeasureSeq ms = mixed || rng.below(2) ? MeasureSeq(base, vectors, UniformRule{}) : MeasureSeq::example_d();
    std::map<std::size_t, DigitSet> cons;
    for (std::size_t i = 1; i <= depth; ++i) {
        if (rng.below(2)) continue;
        DigitSet s;
        for (unsigned a = 0; a < base.alpha(i); ++a)
            if (rng.below(2)) s.push_back(a);
        if (s.empty()) s.push_back(static_cast<unsigned>(rng.below(base.alpha(i))));
        cons[i] = s;
    }
    return {ms, cons, depth};
}

// mu{x : x + shift in S} summed over all depth-D prefixes.
inline Rational brute_force(const Instance& in, const Integer& shift) {
    const BaseSeq& base = in.ms.base();
    Rational total = 0;
    const Integer beta = beta_of(base, in.depth);
    for (Integer v = 0; v < beta; ++v) {
        const auto moved = digits_of(v + shift, base, in.depth);
        bool ok = true;
        for (const auto& [i, allowed] : in.constraints)
            ok = ok && std::binary_search(allowed.begin(), allowed.end(), moved[i - 1]);
        if (!ok) continue;
        const auto own = digits_of(v, base, in.depth);
        Rational mass = 1;
        for (std::size_t i = 1; i <= in.depth; ++i) mass *= in.ms.prob(i, own[i - 1]);
        total += mass;
    }
    return total;
}

}  // namespace odo::test
