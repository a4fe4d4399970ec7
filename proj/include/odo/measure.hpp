#pragma once

// Product probability measures mu = prod mu_n on prod {0..alpha_n - 1}, with
// certified enclosures of infinite tail products, the continuity condition
// on the ratios lambda_n(j), and the non-atomicity test.

#include "odo/claim_report.hpp"
#include "odo/interval.hpp"
#include "odo/mixed_radix.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace odo {

// mu_n(a) = 1 / alpha_n.
struct UniformRule {
    bool operator==(const UniformRule&) const = default;
};

// Two-letter coordinates with mu_n(1) = p_n, mu_n(0) = 1 - p_n, where
// p_n = 1 / b^n off markers and p_{q^k} = 1 / 2^k on markers q^k (k >= 1).
// marker_base == 0 means no markers.
struct DyadicRule {
    unsigned geometric_base = 2;
    unsigned marker_base = 0;
    bool operator==(const DyadicRule&) const = default;
};

// Two-letter coordinates with p_n = 1 / 2^(2^n).
struct DoubleExponentialRule {
    bool operator==(const DoubleExponentialRule&) const = default;
};

using TailRule = std::variant<UniformRule, DyadicRule, DoubleExponentialRule>;

// Marker positions q^k, k >= 1; false for q == 0.
bool is_power_marker(std::size_t n, unsigned q);

// Which coordinates a tail product runs over; excluded coordinates contribute 1.
struct TailFilter {
    unsigned excluded_marker_base = 0;  // 0: every coordinate counts
    std::optional<std::size_t> last;    // finite range [from, last] when set

    static TailFilter all() { return {}; }
    static TailFilter off_markers(unsigned q) { return {q, std::nullopt}; }
    static TailFilter range_until(std::size_t last) { return {0, last}; }
    bool finite() const { return last.has_value(); }
    bool includes(std::size_t n) const {
        return (!last || n <= *last) && !is_power_marker(n, excluded_marker_base);
    }
};

class MeasureSeq {
public:
    // explicit_vectors[n-1] is mu_n for n <= explicit_vectors.size(); the
    // closed-form rule covers every later coordinate.
    MeasureSeq(BaseSeq base, std::vector<std::vector<Rational>> explicit_vectors, TailRule rule);

    static MeasureSeq uniform(const BaseSeq& base);
    static MeasureSeq dyadic(unsigned geometric_base, unsigned marker_base = 0);
    // The dyadic marker system with m_k = 4^k.
    static MeasureSeq example_d();
    static MeasureSeq double_exponential();

    const BaseSeq& base() const { return impl_->base; }
    const TailRule& rule() const { return impl_->rule; }
    std::size_t horizon() const { return impl_->explicit_vectors.size(); }

    Rational prob(std::size_t n, unsigned a) const;
    std::vector<Rational> vector(std::size_t n) const;
    Rational max_prob(std::size_t n) const;
    Rational min_prob(std::size_t n) const;

    // Upper bound on sum_{i >= from, filter(i)} (1 - mu_i(digit)) from the
    // closed-form rule; requires from > horizon(). nullopt when the sum diverges.
    std::optional<Rational> complement_sum_bound(std::size_t from, const TailFilter& filter, unsigned digit) const;

    bool operator==(const MeasureSeq& other) const;

private:
    struct Impl {
        BaseSeq base;
        std::vector<std::vector<Rational>> explicit_vectors;
        TailRule rule;
        std::vector<std::vector<Rational>> cache;  // mu_n for n <= cache.size()
    };
    std::vector<Rational> compute_vector(std::size_t n) const;
    std::shared_ptr<const Impl> impl_;
};

// lambda_n(j) = mu_n(j) / mu_n(j-1) for j > 0, mu_n(0) / mu_n(alpha_n - 1) for j = 0.
Rational lambda_ratio(const MeasureSeq& ms, std::size_t n, unsigned j);

// inf over n, j of lambda_n(j) * prod_{k=1}^{n-1} lambda_k(0): exact minimum
// up to the horizon plus a closed-form certificate for the tail.
ClaimReport condition_star(const MeasureSeq& ms, std::size_t horizon);

// Whether prod_n max_a mu_n(a) = 0.
ClaimReport nonatomic_check(const MeasureSeq& ms, std::size_t horizon);

// Enclosure of prod_{i >= from, filter(i)} mu_i(digit): exact product of the
// next `explicit_factors` factors, Weierstrass lower bound for the rest, and
// the following factor as the upper cut.
RatInterval tail_product_bounds(const MeasureSeq& ms, std::size_t from, const TailFilter& filter, unsigned digit,
                                std::size_t explicit_factors = 0);

struct CertifiedValue {
    RatInterval enclosure;
    bool cap_reached = false;  // width still above tolerance at the depth cap
};

inline constexpr std::size_t kDefaultDepthCap = 4096;
Rational default_tolerance();  // 2^-40

// Same product, refined until the enclosure width is <= tol or `cap`
// coordinates have been multiplied out explicitly.
CertifiedValue tail_product_enclosure(const MeasureSeq& ms, std::size_t from, const TailFilter& filter,
                                      unsigned digit, const Rational& tol, std::size_t cap = kDefaultDepthCap);

Rational mu_cylinder(const MeasureSeq& ms, const Prefix& c);

}  // namespace odo
