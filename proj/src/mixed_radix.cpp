#include "odo/mixed_radix.hpp"

#include <stdexcept>
#include <string>

namespace odo {

BaseSeq::BaseSeq(std::vector<unsigned> prefix, unsigned default_alpha)
    : prefix_(std::move(prefix)), default_(default_alpha) {
    if (default_ < 2) throw std::invalid_argument("base default alpha must be >= 2");
    for (unsigned a : prefix_)
        if (a < 2) throw std::invalid_argument("every alpha_n must be >= 2");
    // Canonical form: drop trailing explicit entries equal to the default.
    while (!prefix_.empty() && prefix_.back() == default_) prefix_.pop_back();
}

BaseSeq BaseSeq::constant(unsigned alpha) { return BaseSeq({}, alpha); }

BaseSeq BaseSeq::with_prefix(std::vector<unsigned> prefix, unsigned default_alpha) {
    return BaseSeq(std::move(prefix), default_alpha);
}

unsigned BaseSeq::alpha(std::size_t n) const {
    if (n == 0) throw std::out_of_range("positions are 1-based");
    return n <= prefix_.size() ? prefix_[n - 1] : default_;
}

Integer BaseSeq::beta(std::size_t d) const {
    Integer b = 1;
    const std::size_t explicit_part = std::min(d, prefix_.size());
    for (std::size_t i = 0; i < explicit_part; ++i) b *= prefix_[i];
    if (d > explicit_part) b *= pow_int(default_, d - explicit_part);
    return b;
}

MixedRadixDigits::MixedRadixDigits(BaseSeq base, DigitsKind kind, std::vector<unsigned> window)
    : base_(std::move(base)), kind_(kind), window_(std::move(window)) {
    for (std::size_t i = 0; i < window_.size(); ++i)
        if (window_[i] >= base_.alpha(i + 1))
            throw std::invalid_argument("digit " + std::to_string(window_[i]) + " out of range at position " +
                                        std::to_string(i + 1));
    if (kind_ == DigitsKind::FiniteSupport) {
        while (!window_.empty() && window_.back() == 0) window_.pop_back();
    } else {
        while (!window_.empty() && window_.back() == base_.alpha(window_.size()) - 1) window_.pop_back();
    }
}

unsigned MixedRadixDigits::digit(std::size_t i) const {
    if (i == 0) throw std::out_of_range("positions are 1-based");
    if (i <= window_.size()) return window_[i - 1];
    return kind_ == DigitsKind::FiniteSupport ? 0u : base_.alpha(i) - 1;
}

Integer MixedRadixDigits::signed_value() const {
    Integer acc = 0;
    Integer place = 1;
    for (std::size_t i = 1; i <= window_.size(); ++i) {
        const unsigned a = base_.alpha(i);
        const unsigned d = kind_ == DigitsKind::FiniteSupport ? window_[i - 1] : a - 1 - window_[i - 1];
        acc += place * d;
        place *= a;
    }
    return kind_ == DigitsKind::FiniteSupport ? acc : Integer(-1 - acc);
}

Prefix::Prefix(BaseSeq base, std::vector<unsigned> digits, Integer value)
    : base_(std::move(base)), digits_(std::move(digits)), value_(std::move(value)) {}

Prefix Prefix::from_digits(const BaseSeq& base, std::vector<unsigned> digits) {
    Integer value = 0;
    Integer place = 1;
    for (std::size_t i = 1; i <= digits.size(); ++i) {
        const unsigned a = base.alpha(i);
        if (digits[i - 1] >= a)
            throw std::invalid_argument("digit " + std::to_string(digits[i - 1]) + " out of range at position " +
                                        std::to_string(i));
        value += place * digits[i - 1];
        place *= a;
    }
    return Prefix(base, std::move(digits), std::move(value));
}

Prefix Prefix::from_value(const BaseSeq& base, std::size_t depth, const Integer& value) {
    if (value < 0 || value >= base.beta(depth))
        throw std::invalid_argument("prefix value " + value.get_str() + " outside [0, beta_" + std::to_string(depth) +
                                    ")");
    std::vector<unsigned> digits(depth);
    Integer rest = value;
    for (std::size_t i = 1; i <= depth; ++i) {
        const unsigned a = base.alpha(i);
        digits[i - 1] = static_cast<unsigned>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), a));
    }
    return Prefix(base, std::move(digits), value);
}

Prefix Prefix::zero(const BaseSeq& base, std::size_t depth) {
    return Prefix(base, std::vector<unsigned>(depth, 0), Integer(0));
}

MixedRadixDigits to_digits(const Integer& k, const BaseSeq& base) {
    if (k < 0) throw std::invalid_argument("to_digits requires k >= 0");
    std::vector<unsigned> window;
    Integer rest = k;
    for (std::size_t i = 1; rest != 0; ++i)
        window.push_back(static_cast<unsigned>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base.alpha(i))));
    return MixedRadixDigits(base, DigitsKind::FiniteSupport, std::move(window));
}

MixedRadixDigits neg_digits(const Integer& k, const BaseSeq& base) {
    if (k <= 0) throw std::invalid_argument("neg_digits requires k >= 1 (zero has no eventually-maximal form)");
    const MixedRadixDigits pos = to_digits(k, base);
    const auto& kd = pos.window();
    std::size_t j = 0;
    while (kd[j] == 0) ++j;  // 0-based index of the least nonzero digit
    std::vector<unsigned> y(kd.size(), 0);
    y[j] = base.alpha(j + 1) - kd[j];
    for (std::size_t i = j + 1; i < kd.size(); ++i) y[i] = base.alpha(i + 1) - kd[i] - 1;
    return MixedRadixDigits(base, DigitsKind::CofiniteMax, std::move(y));
}

MixedRadixDigits group_digits(const Integer& n, const BaseSeq& base) {
    return n >= 0 ? to_digits(n, base) : neg_digits(Integer(-n), base);
}

StepResult odometer_step(const Prefix& x) {
    std::vector<unsigned> d = x.digits();
    const BaseSeq& base = x.base();
    for (std::size_t i = 1; i <= d.size(); ++i) {
        if (d[i - 1] != base.alpha(i) - 1) {
            d[i - 1] += 1;
            return {Prefix::from_digits(base, std::move(d)), false};
        }
        d[i - 1] = 0;
    }
    return {Prefix::zero(base, d.size()), true};
}

AddResult add_with_carry(const Prefix& x, const MixedRadixDigits& t, unsigned carry_in) {
    if (!(x.base() == t.base())) throw std::invalid_argument("add_with_carry: base mismatch");
    if (carry_in > 1) throw std::invalid_argument("carry_in must be 0 or 1");
    const BaseSeq& base = x.base();
    std::vector<unsigned> out(x.depth());
    unsigned carry = carry_in;
    for (std::size_t i = 1; i <= x.depth(); ++i) {
        const unsigned a = base.alpha(i);
        const unsigned s = x.digit(i) + t.digit(i) + carry;
        out[i - 1] = s % a;
        carry = s / a;
    }
    return {Prefix::from_digits(base, std::move(out)), carry};
}

TranslateResult prefix_translate(const Integer& v, const Integer& n, std::size_t depth, const BaseSeq& base) {
    const Integer beta = base.beta(depth);
    if (v < 0 || v >= beta) throw std::invalid_argument("prefix_translate: value outside [0, beta_D)");
    const Integer shifted = v + mod(n, beta);
    if (shifted >= beta) return {Integer(shifted - beta), true};
    return {shifted, false};
}

}  // namespace odo
