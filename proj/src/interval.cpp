#include "odo/interval.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace odo {

RatInterval::RatInterval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (hi_ < lo_)
        throw std::invalid_argument("interval with lo > hi: [" + to_string(lo_) + ", " + to_string(hi_) + "]");
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    if (a.lo_ >= 0 && b.lo_ >= 0) return RatInterval(a.lo_ * b.lo_, a.hi_ * b.hi_);
    const Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return RatInterval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

RatInterval operator*(const Rational& s, const RatInterval& a) {
    if (s >= 0) return RatInterval(s * a.lo_, s * a.hi_);
    return RatInterval(s * a.hi_, s * a.lo_);
}

std::ostream& operator<<(std::ostream& os, const RatInterval& iv) {
    return os << '[' << to_string(iv.lo()) << ", " << to_string(iv.hi()) << ']';
}

}  // namespace odo
