#include "odo/measure.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace odo {

namespace {

constexpr std::size_t kCacheDepth = 256;
constexpr std::size_t kDoubleExponentialCacheDepth = 10;
// 2^(2^n) stops being a reasonable exact number past this depth.
constexpr std::size_t kDoubleExponentialMaxDepth = 24;

// Marker index k with q^k == n, or 0 when n is not a marker.
std::size_t marker_index(std::size_t n, unsigned q) {
    if (q < 2 || n < q) return 0;
    std::size_t k = 0;
    while (n % q == 0) {
        n /= q;
        ++k;
    }
    return n == 1 ? k : 0;
}

}  // namespace

bool is_power_marker(std::size_t n, unsigned q) { return marker_index(n, q) != 0; }

Rational default_tolerance() { return inv_pow(2, 40); }

MeasureSeq::MeasureSeq(BaseSeq base, std::vector<std::vector<Rational>> explicit_vectors, TailRule rule) {
    for (std::size_t n = 1; n <= explicit_vectors.size(); ++n) {
        const auto& v = explicit_vectors[n - 1];
        if (v.size() != base.alpha(n))
            throw std::invalid_argument("mu_" + std::to_string(n) + " must have alpha_n entries");
        Rational sum = 0;
        for (const auto& q : v) {
            if (q <= 0) throw std::invalid_argument("mu_" + std::to_string(n) + " has a non-positive entry");
            sum += q;
        }
        if (sum != 1) throw std::invalid_argument("mu_" + std::to_string(n) + " does not sum to 1");
    }
    const bool two_letter = !std::holds_alternative<UniformRule>(rule);
    if (two_letter) {
        if (base.default_alpha() != 2 || base.explicit_prefix().size() > explicit_vectors.size())
            throw std::invalid_argument("two-letter tail rules need alpha_n = 2 beyond the explicit prefix");
    }
    if (const auto* d = std::get_if<DyadicRule>(&rule)) {
        if (d->geometric_base < 2) throw std::invalid_argument("dyadic rule needs geometric base >= 2");
        if (d->marker_base == 1) throw std::invalid_argument("marker base must be 0 (none) or >= 2");
    }
    auto impl = std::make_shared<Impl>(Impl{std::move(base), std::move(explicit_vectors), rule, {}});
    impl_ = impl;
    const std::size_t depth =
        std::holds_alternative<DoubleExponentialRule>(rule) ? kDoubleExponentialCacheDepth : kCacheDepth;
    for (std::size_t n = 1; n <= depth; ++n) impl->cache.push_back(compute_vector(n));
}

MeasureSeq MeasureSeq::uniform(const BaseSeq& base) { return MeasureSeq(base, {}, UniformRule{}); }

MeasureSeq MeasureSeq::dyadic(unsigned geometric_base, unsigned marker_base) {
    return MeasureSeq(BaseSeq::constant(2), {}, DyadicRule{geometric_base, marker_base});
}

MeasureSeq MeasureSeq::example_d() { return dyadic(2, 4); }

MeasureSeq MeasureSeq::double_exponential() {
    return MeasureSeq(BaseSeq::constant(2), {}, DoubleExponentialRule{});
}

bool MeasureSeq::operator==(const MeasureSeq& other) const {
    return impl_ == other.impl_ || (impl_->base == other.impl_->base &&
                                    impl_->explicit_vectors == other.impl_->explicit_vectors &&
                                    impl_->rule == other.impl_->rule);
}

std::vector<Rational> MeasureSeq::compute_vector(std::size_t n) const {
    if (n == 0) throw std::out_of_range("positions are 1-based");
    if (n <= impl_->explicit_vectors.size()) return impl_->explicit_vectors[n - 1];
    const unsigned alpha = impl_->base.alpha(n);
    if (std::holds_alternative<UniformRule>(impl_->rule)) return std::vector<Rational>(alpha, Rational(1, alpha));
    Rational p;
    if (const auto* d = std::get_if<DyadicRule>(&impl_->rule)) {
        const std::size_t k = marker_index(n, d->marker_base);
        p = k != 0 ? inv_pow(2, k) : inv_pow(d->geometric_base, n);
    } else {
        if (n > kDoubleExponentialMaxDepth)
            throw std::overflow_error("coordinate " + std::to_string(n) + " too deep for 2^(2^n) probabilities");
        p = Rational(Integer(1), pow2(1UL << n));
    }
    return {Rational(1 - p), p};
}

std::vector<Rational> MeasureSeq::vector(std::size_t n) const {
    if (n >= 1 && n <= impl_->cache.size()) return impl_->cache[n - 1];
    return compute_vector(n);
}

Rational MeasureSeq::prob(std::size_t n, unsigned a) const {
    if (n >= 1 && n <= impl_->cache.size()) return impl_->cache[n - 1].at(a);
    return compute_vector(n).at(a);
}

Rational MeasureSeq::max_prob(std::size_t n) const {
    const auto v = vector(n);
    return *std::max_element(v.begin(), v.end());
}

Rational MeasureSeq::min_prob(std::size_t n) const {
    const auto v = vector(n);
    return *std::min_element(v.begin(), v.end());
}

std::optional<Rational> MeasureSeq::complement_sum_bound(std::size_t from, const TailFilter& filter,
                                                         unsigned digit) const {
    if (from <= horizon()) throw std::invalid_argument("complement_sum_bound: start inside the explicit prefix");
    if (from == 0) throw std::out_of_range("positions are 1-based");
    if (std::holds_alternative<UniformRule>(impl_->rule)) return std::nullopt;
    if (digit != 0) return std::nullopt;  // complements of digit 1 tend to 1
    if (const auto* d = std::get_if<DyadicRule>(&impl_->rule)) {
        const unsigned b = d->geometric_base;
        // sum_{i >= from} b^-i
        Rational bound(Integer(1), Integer(b - 1) * pow_int(b, from - 1));
        bound.canonicalize();
        if (d->marker_base != 0 && filter.excluded_marker_base != d->marker_base) {
            // sum_{k >= k0} 2^-k over markers q^k >= from
            std::size_t k0 = 1;
            Integer m = d->marker_base;
            while (m < from) {
                m *= d->marker_base;
                ++k0;
            }
            bound += inv_pow(2, k0 - 1);
        }
        return bound;
    }
    // 2^-(2^i) <= 4^-i, so the tail is below sum_{i >= from} 4^-i.
    Rational bound(Integer(1), Integer(3) * pow_int(4, from - 1));
    bound.canonicalize();
    return bound;
}

Rational lambda_ratio(const MeasureSeq& ms, std::size_t n, unsigned j) {
    const auto v = ms.vector(n);
    if (j >= v.size()) throw std::out_of_range("lambda_ratio: digit outside A_n");
    return j == 0 ? Rational(v.front() / v.back()) : Rational(v[j] / v[j - 1]);
}

ClaimReport condition_star(const MeasureSeq& ms, std::size_t horizon) {
    if (horizon == 0) throw std::invalid_argument("condition_star: horizon must be >= 1");
    ClaimReport rep;
    rep.claim = "star";
    rep.param("horizon", std::to_string(horizon));

    const std::size_t full = std::max(horizon, ms.horizon());
    Rational running = 1;  // prod_{k=1}^{n-1} lambda_k(0)
    std::optional<Rational> min_h, min_full;
    std::size_t arg_n = 0;
    unsigned arg_j = 0;
    for (std::size_t n = 1; n <= full; ++n) {
        const unsigned alpha = ms.base().alpha(n);
        for (unsigned j = 0; j < alpha; ++j) {
            const Rational term = lambda_ratio(ms, n, j) * running;
            if (n <= horizon && (!min_h || term < *min_h)) {
                min_h = term;
                arg_n = n;
                arg_j = j;
            }
            if (!min_full || term < *min_full) min_full = term;
        }
        running *= lambda_ratio(ms, n, 0);
    }
    rep.value("min_term", *min_h);
    rep.value("argmin_n", std::to_string(arg_n));
    rep.value("argmin_j", std::to_string(arg_j));

    std::optional<Rational> tail_lower;
    std::string certificate = "none";
    if (std::holds_alternative<UniformRule>(ms.rule())) {
        // Every lambda is 1 past the explicit prefix, so each later term equals the running product.
        tail_lower = running;
        certificate = "uniform-tail";
    } else if (const auto* d = std::get_if<DyadicRule>(&ms.rule())) {
        // For n > full + 2: term >= P_full * lambda_r(0) * p_n with r in {n-1, n-2}
        // an off-marker coordinate, lambda_r(0) = b^r - 1 >= b^r / 2 and p_n >= b^-n,
        // hence term >= P_full / (2 b^2). The two boundary coordinates are exact.
        Rational p = running;
        Rational lower = running / Rational(2 * d->geometric_base * d->geometric_base);
        for (std::size_t n = full + 1; n <= full + 2; ++n) {
            for (unsigned j = 0; j < 2; ++j) lower = std::min(lower, Rational(lambda_ratio(ms, n, j) * p));
            p *= lambda_ratio(ms, n, 0);
        }
        tail_lower = lower;
        certificate = "dyadic-growth";
    }
    rep.value("certificate", certificate);
    if (!tail_lower) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("no closed-form tail certificate for this rule; minimum reported over n <= horizon only");
        return rep;
    }
    const Rational certified = std::min(*min_full, *tail_lower);
    rep.value("tail_lower_bound", *tail_lower);
    rep.value("tail_dominates", *tail_lower >= *min_h ? "true" : "false");
    rep.value("certified_lower_bound", certified);
    rep.check("certified lower bound of the infimum is positive", certified, Cmp::Greater, Rational(0));
    rep.settle_from_checks();
    return rep;
}

ClaimReport nonatomic_check(const MeasureSeq& ms, std::size_t horizon) {
    if (horizon == 0) throw std::invalid_argument("nonatomic_check: horizon must be >= 1");
    ClaimReport rep;
    rep.claim = "nonatomic";
    rep.param("horizon", std::to_string(horizon));
    std::size_t h = std::max(horizon, ms.horizon());
    Rational partial = 1;
    for (std::size_t n = 1; n <= h; ++n) partial *= ms.max_prob(n);

    if (std::holds_alternative<UniformRule>(ms.rule())) {
        // 1 - max_a mu_n(a) = 1 - 1/alpha_n >= 1/2 on the tail: the complement sum diverges.
        rep.value("complement_sum", "divergent");
        rep.enclosure("product_of_max", RatInterval(Rational(0), partial));
        rep.check("tail complement 1 - max_a mu_n(a) is bounded below", Rational(1 - ms.max_prob(h + 1)),
                  Cmp::GreaterEq, Rational(1, 2));
        rep.settle_from_checks();
        return rep;
    }
    // Two-letter rules: max_a mu_n(a) = mu_n(0), complements p_n are summable.
    auto bound = ms.complement_sum_bound(h + 1, TailFilter::all(), 0);
    while (*bound >= 1) {
        ++h;
        partial *= ms.max_prob(h);
        bound = ms.complement_sum_bound(h + 1, TailFilter::all(), 0);
    }
    const Rational lower = partial * (1 - *bound);
    rep.value("complement_sum", "convergent");
    rep.value("complement_sum_bound", *bound);
    rep.enclosure("product_of_max", RatInterval(lower, partial));
    rep.check("certified lower bound of prod_n max_a mu_n(a)", lower, Cmp::Greater, Rational(0));
    // A positive product means the measure has atoms.
    rep.verdict = Verdict::Refuted;
    rep.notes.push_back("prod_n max_a mu_n(a) > 0: the measure is not non-atomic");
    return rep;
}

namespace {

struct ProductCursor {
    const MeasureSeq& ms;
    const TailFilter& filter;
    unsigned digit;
    std::size_t next;
    Rational product = 1;
    std::size_t taken = 0;

    Rational factor(std::size_t i) const { return filter.includes(i) ? ms.prob(i, digit) : Rational(1); }
    void advance() {
        product *= factor(next);
        ++next;
        ++taken;
    }
    bool exhausted() const { return filter.finite() && next > *filter.last; }
    RatInterval enclosure() const {
        if (exhausted()) return RatInterval(product);
        const auto s = ms.complement_sum_bound(next, filter, digit);
        const Rational lo = (s && *s < 1) ? Rational(product * (1 - *s)) : Rational(0);
        return RatInterval(lo, product * factor(next));
    }
};

}  // namespace

RatInterval tail_product_bounds(const MeasureSeq& ms, std::size_t from, const TailFilter& filter, unsigned digit,
                                std::size_t explicit_factors) {
    if (from == 0) throw std::out_of_range("positions are 1-based");
    ProductCursor cur{ms, filter, digit, from};
    while (!cur.exhausted() && (cur.next <= ms.horizon() || cur.taken < explicit_factors)) cur.advance();
    return cur.enclosure();
}

CertifiedValue tail_product_enclosure(const MeasureSeq& ms, std::size_t from, const TailFilter& filter,
                                      unsigned digit, const Rational& tol, std::size_t cap) {
    if (from == 0) throw std::out_of_range("positions are 1-based");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    ProductCursor cur{ms, filter, digit, from};
    while (!cur.exhausted() && cur.next <= ms.horizon()) cur.advance();
    for (;;) {
        RatInterval iv = cur.enclosure();
        if (iv.width() <= tol || cur.exhausted()) return {std::move(iv), false};
        if (cur.taken >= cap) return {std::move(iv), true};
        cur.advance();
    }
}

Rational mu_cylinder(const MeasureSeq& ms, const Prefix& c) {
    if (!(c.base() == ms.base())) throw std::invalid_argument("mu_cylinder: base mismatch");
    Rational m = 1;
    for (std::size_t i = 1; i <= c.depth(); ++i) m *= ms.prob(i, c.digit(i));
    return m;
}

}  // namespace odo
