#include "odo/pattern.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace odo {

Cylinder cylinder_translate(const Cylinder& c, const Integer& n, Direction dir) {
    const Integer shift = dir == Direction::Preimage ? Integer(-n) : n;
    return Prefix::from_value(c.base(), c.depth(), prefix_translate(c.value(), shift, c.depth(), c.base()).value);
}

// ---------------------------------------------------------------- CylinderUnion

namespace {

constexpr unsigned kMaxEnumerationBits = 26;

void require_same_shape(const CylinderUnion& a, const CylinderUnion& b) {
    if (!(a.base() == b.base()) || a.depth() != b.depth())
        throw std::invalid_argument("cylinder unions differ in base or depth");
}

}  // namespace

CylinderUnion::CylinderUnion(BaseSeq base, std::size_t depth, std::vector<Integer> values)
    : base_(std::move(base)), depth_(depth), values_(std::move(values)) {
    const Integer beta = base_.beta(depth_);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (!values_.empty() && (values_.front() < 0 || values_.back() >= beta))
        throw std::invalid_argument("cylinder value outside [0, beta_D)");
}

CylinderUnion CylinderUnion::empty(const BaseSeq& base, std::size_t depth) { return {base, depth, {}}; }

CylinderUnion CylinderUnion::full(const BaseSeq& base, std::size_t depth) {
    const Integer beta = base.beta(depth);
    if (bit_length(beta) > kMaxEnumerationBits) throw std::length_error("full cylinder union too large to enumerate");
    std::vector<Integer> vals;
    for (Integer v = 0; v < beta; ++v) vals.push_back(v);
    return {base, depth, std::move(vals)};
}

CylinderUnion CylinderUnion::single(const Cylinder& c) { return {c.base(), c.depth(), {c.value()}}; }

bool CylinderUnion::contains(const Integer& v) const { return std::binary_search(values_.begin(), values_.end(), v); }

std::vector<Cylinder> CylinderUnion::cylinders() const {
    std::vector<Cylinder> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(Prefix::from_value(base_, depth_, v));
    return out;
}

CylinderUnion CylinderUnion::refine(std::size_t new_depth) const {
    if (new_depth < depth_) throw std::invalid_argument("refine: new depth below current depth");
    const Integer beta = base_.beta(depth_);
    const Integer fan = base_.beta(new_depth) / beta;
    if (bit_length(Integer(fan * Integer(values_.size()))) > kMaxEnumerationBits)
        throw std::length_error("refined cylinder union too large to enumerate");
    std::vector<Integer> vals;
    for (Integer u = 0; u < fan; ++u)
        for (const auto& v : values_) vals.push_back(v + beta * u);
    return {base_, new_depth, std::move(vals)};
}

CylinderUnion CylinderUnion::complement() const { return difference(full(base_, depth_), *this); }

CylinderUnion CylinderUnion::translate(const Integer& n, Direction dir) const {
    const Integer shift = dir == Direction::Preimage ? Integer(-n) : n;
    std::vector<Integer> vals;
    vals.reserve(values_.size());
    for (const auto& v : values_) vals.push_back(prefix_translate(v, shift, depth_, base_).value);
    return {base_, depth_, std::move(vals)};
}

Rational CylinderUnion::measure(const MeasureSeq& ms) const {
    if (!(ms.base() == base_)) throw std::invalid_argument("measure: base mismatch");
    Rational total = 0;
    for (const auto& c : cylinders()) total += mu_cylinder(ms, c);
    return total;
}

CylinderUnion unite(const CylinderUnion& a, const CylinderUnion& b) {
    require_same_shape(a, b);
    std::vector<Integer> out;
    std::set_union(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(), std::back_inserter(out));
    return {a.base_, a.depth_, std::move(out)};
}

CylinderUnion intersect(const CylinderUnion& a, const CylinderUnion& b) {
    require_same_shape(a, b);
    std::vector<Integer> out;
    std::set_intersection(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(),
                          std::back_inserter(out));
    return {a.base_, a.depth_, std::move(out)};
}

CylinderUnion difference(const CylinderUnion& a, const CylinderUnion& b) {
    require_same_shape(a, b);
    std::vector<Integer> out;
    std::set_difference(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(),
                        std::back_inserter(out));
    return {a.base_, a.depth_, std::move(out)};
}

// ---------------------------------------------------------------- PatternSet

PatternSet::PatternSet(MeasureSeq ms, std::map<std::size_t, DigitSet> constraints, EventualRule rule,
                       std::size_t horizon)
    : ms_(std::move(ms)), constraints_(std::move(constraints)), rule_(rule), horizon_(horizon) {
    if (const auto* z = std::get_if<ZeroOffMarkersTail>(&rule_); z && z->marker_base < 2)
        throw std::invalid_argument("marker base must be >= 2");
    for (auto& [i, set] : constraints_) {
        if (i == 0) throw std::out_of_range("positions are 1-based");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) throw std::invalid_argument("allowed digit set must be nonempty");
        if (set.back() >= ms_.base().alpha(i))
            throw std::invalid_argument("constraint digit outside {0, ..., alpha_i - 1}");
        horizon_ = std::max(horizon_, i);
    }
    canonicalize();
}

PatternSet PatternSet::full(const MeasureSeq& ms) { return {ms, {}, FreeTail{}}; }

PatternSet PatternSet::cylinder(const MeasureSeq& ms, const Cylinder& c) {
    if (!(c.base() == ms.base())) throw std::invalid_argument("cylinder: base mismatch");
    std::map<std::size_t, DigitSet> cons;
    for (std::size_t i = 1; i <= c.depth(); ++i) cons[i] = {c.digit(i)};
    return {ms, std::move(cons), FreeTail{}, c.depth()};
}

bool PatternSet::rule_allows(std::size_t i, unsigned digit) const {
    if (const auto* z = std::get_if<ZeroOffMarkersTail>(&rule_))
        return digit == 0 || is_power_marker(i, z->marker_base);
    return true;
}

bool PatternSet::rule_is_free(std::size_t i) const {
    if (const auto* z = std::get_if<ZeroOffMarkersTail>(&rule_)) return is_power_marker(i, z->marker_base);
    return true;
}

void PatternSet::canonicalize() {
    for (auto it = constraints_.begin(); it != constraints_.end();) {
        if (it->second.size() == ms_.base().alpha(it->first))
            it = constraints_.erase(it);
        else
            ++it;
    }
    // Lower the horizon while its top position already agrees with the rule.
    while (horizon_ > 0) {
        const auto it = constraints_.find(horizon_);
        bool agrees;
        if (it == constraints_.end()) {
            agrees = rule_is_free(horizon_);
        } else {
            agrees = !rule_is_free(horizon_) && it->second == DigitSet{0};
        }
        if (!agrees) break;
        if (it != constraints_.end()) constraints_.erase(it);
        --horizon_;
    }
}

bool PatternSet::allows(std::size_t i, unsigned digit) const {
    if (i == 0) throw std::out_of_range("positions are 1-based");
    if (i > horizon_) return rule_allows(i, digit);
    const auto it = constraints_.find(i);
    return it == constraints_.end() || std::binary_search(it->second.begin(), it->second.end(), digit);
}

bool PatternSet::is_free(std::size_t i) const {
    if (i > horizon_) return rule_is_free(i);
    return constraints_.find(i) == constraints_.end();
}

Rational PatternSet::allowed_mass(std::size_t i) const {
    if (is_free(i)) return 1;
    if (i > horizon_) return ms_.prob(i, 0);
    Rational m = 0;
    for (unsigned d : constraints_.at(i)) m += ms_.prob(i, d);
    return m;
}

PatternSet PatternSet::with_constraints(const std::map<std::size_t, DigitSet>& extra) const {
    // Materialize the rule on any newly covered positions before widening the horizon.
    std::map<std::size_t, DigitSet> cons = constraints_;
    std::size_t top = horizon_;
    for (const auto& [i, set] : extra) top = std::max(top, i);
    for (std::size_t i = horizon_ + 1; i <= top; ++i)
        if (!rule_is_free(i)) cons[i] = {0};
    for (const auto& [i, set] : extra) cons[i] = set;
    return {ms_, std::move(cons), rule_, top};
}

bool PatternSet::operator==(const PatternSet& other) const {
    return ms_ == other.ms_ && horizon_ == other.horizon_ && rule_ == other.rule_ &&
           constraints_ == other.constraints_;
}

// ---------------------------------------------------------------- measures

namespace {

struct TailCut {
    std::optional<std::size_t> at;  // nullopt: complement sum diverges
    bool cap_reached = false;
};

// Least h >= start past the measure's explicit horizon whose Weierstrass
// remainder sum_{i >= h} (1 - mu_i(0)) is <= bound.
TailCut weierstrass_cut(const MeasureSeq& ms, std::size_t start, const TailFilter& filter, const Rational& bound,
                        std::size_t cap) {
    std::size_t h = std::max(start, ms.horizon() + 1);
    for (std::size_t steps = 0;; ++h, ++steps) {
        const auto s = ms.complement_sum_bound(h, filter, 0);
        if (!s) return {};
        if (*s <= bound) return {h, false};
        if (steps >= cap) return {h, true};
    }
}

unsigned marker_base_of(const PatternSet& s) { return std::get<ZeroOffMarkersTail>(s.rule()).marker_base; }

}  // namespace

CertifiedValue pattern_tail_measure(const PatternSet& s, std::size_t from, const Rational& tol, std::size_t cap) {
    if (from <= s.horizon()) throw std::invalid_argument("pattern_tail_measure: start inside the horizon");
    if (s.free_tail()) return {RatInterval(Rational(1)), false};
    const TailFilter filter = TailFilter::off_markers(marker_base_of(s));
    const Rational quarter = tol / 4;
    const TailCut cut = weierstrass_cut(s.measure(), from, filter, quarter, cap);
    if (!cut.at) return tail_product_enclosure(s.measure(), from, filter, 0, quarter, cap);
    RatInterval iv = tail_product_bounds(s.measure(), from, filter, 0, *cut.at - from);
    const bool capped = cut.cap_reached && iv.width() > tol;
    return {std::move(iv), capped};
}

CertifiedValue pattern_measure(const PatternSet& s, const Rational& tol, std::size_t cap) {
    Rational head = 1;
    for (std::size_t i = 1; i <= s.horizon() && head != 0; ++i) head *= s.allowed_mass(i);
    CertifiedValue tail = pattern_tail_measure(s, s.horizon() + 1, tol, cap);
    return {head * tail.enclosure, tail.cap_reached};
}

namespace {

// One coordinate of the carry DP: x_i ~ mu_i, y_i = (x_i + t_i + c) mod alpha_i.
// Mass leaving with carry c' lands in next[c']; digits rejected by `allowed` are dropped.
template <class Allowed>
void carry_step(const MeasureSeq& ms, std::size_t i, unsigned ti, const std::array<Rational, 2>& cur,
                std::array<Rational, 2>& next, Allowed allowed) {
    const unsigned alpha = ms.base().alpha(i);
    next[0] = 0;
    next[1] = 0;
    Rational p;
    for (unsigned x = 0; x < alpha; ++x) {
        bool loaded = false;
        for (unsigned c = 0; c < 2; ++c) {
            if (cur[c] == 0) continue;
            const unsigned sum = x + ti + c;
            const unsigned y = sum % alpha;
            if (!allowed(y)) continue;
            if (!loaded) {
                p = ms.prob(i, x);
                loaded = true;
            }
            next[sum / alpha] += cur[c] * p;
        }
    }
}

constexpr std::size_t kTailCacheSpan = 96;

}  // namespace

CarryState window_carry_masses(const MeasureSeq& ms, const MixedRadixDigits& t, std::size_t length) {
    if (!(t.base() == ms.base())) throw std::invalid_argument("window_carry_masses: base mismatch");
    CarryState st;
    std::array<Rational, 2> next;
    for (std::size_t i = 1; i <= length; ++i) {
        carry_step(ms, i, t.digit(i), st.mass, next, [](unsigned) { return true; });
        std::swap(st.mass, next);
    }
    return st;
}

TranslateEngine::TranslateEngine(PatternSet s, Rational tol, std::size_t cap)
    : s_(std::move(s)), tol_(std::move(tol)), cap_(cap) {
    if (tol_ <= 0) throw std::invalid_argument("tolerance must be positive");
    if (s_.free_tail()) return;
    const TailFilter filter = TailFilter::off_markers(marker_base_of(s_));
    const TailCut cut = weierstrass_cut(s_.measure(), s_.horizon() + 1, filter, Rational(tol_ / 4), cap_);
    if (!cut.at) return;
    tail_horizon_ = *cut.at;
    tail_cap_reached_ = cut.cap_reached;
    cache_start_ = s_.horizon() + 1;
    for (std::size_t k = 0; k < kTailCacheSpan; ++k) {
        const std::size_t from = cache_start_ + k;
        const std::size_t h = std::max(from, tail_horizon_);
        tail_cache_.push_back(tail_product_bounds(s_.measure(), from, filter, 0, h - from));
    }
}

RatInterval TranslateEngine::tail(std::size_t from) const {
    if (s_.free_tail()) return RatInterval(Rational(1));
    const TailFilter filter = TailFilter::off_markers(marker_base_of(s_));
    if (tail_horizon_ == 0)
        return tail_product_enclosure(s_.measure(), from, filter, 0, Rational(tol_ / 4), cap_).enclosure;
    if (from >= cache_start_ && from - cache_start_ < tail_cache_.size()) return tail_cache_[from - cache_start_];
    const std::size_t h = std::max(from, tail_horizon_);
    return tail_product_bounds(s_.measure(), from, filter, 0, h - from);
}

CertifiedValue TranslateEngine::measure(const Integer& n, Direction dir) const {
    const BaseSeq& base = s_.measure().base();
    return measure(group_digits(dir == Direction::Preimage ? n : Integer(-n), base));
}

CertifiedValue TranslateEngine::measure(const MixedRadixDigits& t) const {
    const MeasureSeq& ms = s_.measure();
    if (!(t.base() == ms.base())) throw std::invalid_argument("translate: base mismatch");
    const std::size_t window = std::max(s_.horizon(), t.window_length());
    std::array<Rational, 2> cur{Rational(1), Rational(0)};
    std::array<Rational, 2> next;
    for (std::size_t i = 1; i <= window; ++i) {
        carry_step(ms, i, t.digit(i), cur, next, [&](unsigned y) { return s_.allows(i, y); });
        std::swap(cur, next);
    }
    if (s_.free_tail()) return {RatInterval(Rational(cur[0] + cur[1])), false};

    // Past the window t is constant: the carry that reproduces x digit for
    // digit (0 for +n, 1 for -n) is absorbing. The other carry is drained
    // coordinate by coordinate until its mass is below tol / 2.
    const unsigned resolving = t.kind() == DigitsKind::FiniteSupport ? 0 : 1;
    Rational resolved = cur[resolving];
    std::array<Rational, 2> pend{Rational(0), Rational(0)};
    pend[1 - resolving] = cur[1 - resolving];
    const Rational half = tol_ / 2;
    std::size_t i = window + 1;
    bool capped = false;
    while (pend[1 - resolving] > half) {
        if (i - window > cap_) {
            capped = true;
            break;
        }
        if (resolved != 0) resolved *= s_.allowed_mass(i);
        carry_step(ms, i, t.digit(i), pend, next, [&](unsigned y) { return s_.allows(i, y); });
        resolved += next[resolving];
        pend[resolving] = 0;
        pend[1 - resolving] = next[1 - resolving];
        ++i;
    }
    const Rational& pending = pend[1 - resolving];
    const RatInterval tl = tail(i);
    RatInterval iv(resolved * tl.lo(), resolved * tl.hi() + pending);
    capped = capped || (tail_cap_reached_ && iv.width() > tol_);
    if (tail_horizon_ == 0 && iv.width() > tol_) capped = true;
    return {std::move(iv), capped};
}

CertifiedValue translate_preimage_measure(const PatternSet& s, const Integer& n, Direction dir, const Rational& tol,
                                          std::size_t cap) {
    return TranslateEngine(s, tol, cap).measure(n, dir);
}

}  // namespace odo
