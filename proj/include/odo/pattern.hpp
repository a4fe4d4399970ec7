#pragma once

// Measurable sets built from per-coordinate digit constraints, and the
// carry-transfer dynamic program that measures their translates under f^n.

#include "odo/measure.hpp"
#include "odo/mixed_radix.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace odo {

// f^-n(S) = {x : x + n in S}; f^n(S) = {x : x - n in S}.
enum class Direction { Preimage, Image };

// A cylinder [b_1, ..., b_D] is identified with its prefix.
using Cylinder = Prefix;

// The depth-D cylinder equal to f^-n(C) (preimage) or f^n(C) (image).
Cylinder cylinder_translate(const Cylinder& c, const Integer& n, Direction dir);

// Finite union of same-depth cylinders, kept as sorted distinct prefix values.
class CylinderUnion {
public:
    CylinderUnion(BaseSeq base, std::size_t depth, std::vector<Integer> values);
    static CylinderUnion empty(const BaseSeq& base, std::size_t depth);
    static CylinderUnion full(const BaseSeq& base, std::size_t depth);
    static CylinderUnion single(const Cylinder& c);

    const BaseSeq& base() const { return base_; }
    std::size_t depth() const { return depth_; }
    const std::vector<Integer>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    bool contains(const Integer& v) const;
    std::vector<Cylinder> cylinders() const;

    // Same set expressed with deeper cylinders.
    CylinderUnion refine(std::size_t new_depth) const;
    CylinderUnion complement() const;
    CylinderUnion translate(const Integer& n, Direction dir) const;
    Rational measure(const MeasureSeq& ms) const;

    // Operands must share base and depth; mismatches throw.
    friend CylinderUnion unite(const CylinderUnion& a, const CylinderUnion& b);
    friend CylinderUnion intersect(const CylinderUnion& a, const CylinderUnion& b);
    friend CylinderUnion difference(const CylinderUnion& a, const CylinderUnion& b);

    bool operator==(const CylinderUnion& other) const = default;

private:
    BaseSeq base_;
    std::size_t depth_;
    std::vector<Integer> values_;
};

struct FreeTail {
    bool operator==(const FreeTail&) const = default;
};
// Beyond the horizon: digit 0 off the markers q^k, anything on them.
struct ZeroOffMarkersTail {
    unsigned marker_base;
    bool operator==(const ZeroOffMarkersTail&) const = default;
};
using EventualRule = std::variant<FreeTail, ZeroOffMarkersTail>;

using DigitSet = std::vector<unsigned>;  // sorted, distinct, nonempty

// {x : x_i in allowed(i) for every i}. Positions up to the horizon are free
// unless constrained; the eventual rule governs everything past it.
class PatternSet {
public:
    PatternSet(MeasureSeq ms, std::map<std::size_t, DigitSet> constraints, EventualRule rule,
               std::size_t horizon = 0);
    static PatternSet full(const MeasureSeq& ms);
    static PatternSet cylinder(const MeasureSeq& ms, const Cylinder& c);

    const MeasureSeq& measure() const { return ms_; }
    const std::map<std::size_t, DigitSet>& constraints() const { return constraints_; }
    const EventualRule& rule() const { return rule_; }
    std::size_t horizon() const { return horizon_; }
    bool free_tail() const { return std::holds_alternative<FreeTail>(rule_); }

    bool allows(std::size_t i, unsigned digit) const;
    bool is_free(std::size_t i) const;
    // mu_i(allowed(i))
    Rational allowed_mass(std::size_t i) const;

    // Adds (or replaces) constraints; the horizon grows as needed.
    PatternSet with_constraints(const std::map<std::size_t, DigitSet>& extra) const;

    bool operator==(const PatternSet& other) const;

private:
    void canonicalize();
    bool rule_allows(std::size_t i, unsigned digit) const;
    bool rule_is_free(std::size_t i) const;
    MeasureSeq ms_;
    std::map<std::size_t, DigitSet> constraints_;
    EventualRule rule_;
    std::size_t horizon_;
};

// Enclosure of the pattern's tail measure prod_{j >= from} mu_j(allowed(j)),
// from > horizon, with width <= tol unless the cap binds.
CertifiedValue pattern_tail_measure(const PatternSet& s, std::size_t from, const Rational& tol,
                                    std::size_t cap = kDefaultDepthCap);

CertifiedValue pattern_measure(const PatternSet& s, const Rational& tol = default_tolerance(),
                               std::size_t cap = kDefaultDepthCap);

// Masses of carry 0 / carry 1 along the DP sweep.
struct CarryState {
    std::array<Rational, 2> mass{Rational(1), Rational(0)};
    Rational total() const { return mass[0] + mass[1]; }
};

// Carry-out masses of x + t over coordinates 1..length with x ~ mu and no
// constraints: mass[c] = mu{x : the sum carries c out of position `length`}.
CarryState window_carry_masses(const MeasureSeq& ms, const MixedRadixDigits& t, std::size_t length);

// Measures mu{x : x + t in S} for many translates t of one pattern set.
// Precomputes the tail enclosures once; immutable and safe to share between threads.
class TranslateEngine {
public:
    explicit TranslateEngine(PatternSet s, Rational tol = default_tolerance(), std::size_t cap = kDefaultDepthCap);

    const PatternSet& pattern() const { return s_; }
    const Rational& tolerance() const { return tol_; }

    // mu(f^-n(S)) for Preimage, mu(f^n(S)) for Image; n >= 0.
    CertifiedValue measure(const Integer& n, Direction dir) const;
    // mu{x : x + t in S}
    CertifiedValue measure(const MixedRadixDigits& t) const;

private:
    RatInterval tail(std::size_t from) const;
    PatternSet s_;
    Rational tol_;
    std::size_t cap_;
    std::size_t tail_horizon_ = 0;  // absolute coordinate where the Weierstrass cut is placed
    bool tail_cap_reached_ = false;
    std::size_t cache_start_ = 0;
    std::vector<RatInterval> tail_cache_;
};

CertifiedValue translate_preimage_measure(const PatternSet& s, const Integer& n, Direction dir,
                                          const Rational& tol = default_tolerance(),
                                          std::size_t cap = kDefaultDepthCap);

}  // namespace odo
