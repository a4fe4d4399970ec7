#pragma once

#include "odo/rational.hpp"

#include <iosfwd>

namespace odo {

// Closed interval [lo, hi] with exact rational endpoints. Every operation is
// exact, so an enclosure stays correct by construction.
class RatInterval {
public:
    RatInterval() : lo_(0), hi_(0) {}
    explicit RatInterval(const Rational& point) : lo_(point), hi_(point) {}
    RatInterval(const Rational& lo, const Rational& hi);

    static RatInterval point(const Rational& x) { return RatInterval(x); }
    static RatInterval unit() { return RatInterval(Rational(0), Rational(1)); }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RatInterval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

    // Certified one-sided comparisons against a threshold.
    bool certainly_below(const Rational& x) const { return hi_ < x; }
    bool certainly_above(const Rational& x) const { return lo_ > x; }

    // 1 - I
    RatInterval complement() const { return RatInterval(1 - hi_, 1 - lo_); }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b);
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b);
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
    friend RatInterval operator*(const Rational& s, const RatInterval& a);

    bool operator==(const RatInterval& other) const = default;

private:
    Rational lo_;
    Rational hi_;
};

std::ostream& operator<<(std::ostream& os, const RatInterval& iv);

}  // namespace odo
