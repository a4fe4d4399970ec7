#include "odo/mixed_radix.hpp"
#include "odo/rng.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace odo;

namespace {

const BaseSeq kDyadic = BaseSeq::constant(2);
const BaseSeq kMixed = BaseSeq::with_prefix({2, 3, 2}, 2);

std::vector<unsigned> window(const MixedRadixDigits& t, std::size_t len) {
    std::vector<unsigned> out;
    for (std::size_t i = 1; i <= len; ++i) out.push_back(t.digit(i));
    return out;
}

// Test-side expansion of (v mod beta_D) by repeated division.
std::vector<unsigned> oracle_digits(Integer v, const BaseSeq& base, std::size_t depth) {
    v = mod(v, base.beta(depth));
    std::vector<unsigned> out;
    for (std::size_t i = 1; i <= depth; ++i) {
        const unsigned a = base.alpha(i);
        out.push_back(static_cast<unsigned>(Integer(v % a).get_ui()));
        v /= a;
    }
    return out;
}

}  // namespace

TEST_CASE("to_digits expands little-endian") {
    CHECK(to_digits(Integer(0), kDyadic).window_length() == 0);
    CHECK(window(to_digits(Integer(7), kMixed), 3) == std::vector<unsigned>{1, 0, 1});
    CHECK(window(to_digits(Integer(6), kDyadic), 3) == std::vector<unsigned>{0, 1, 1});
    CHECK(to_digits(Integer(6), kDyadic).digit(9) == 0);
    CHECK_THROWS(to_digits(Integer(-1), kDyadic));
}

TEST_CASE("neg_digits gives the cofinite representation") {
    CHECK(window(neg_digits(Integer(1), kDyadic), 5) == std::vector<unsigned>{1, 1, 1, 1, 1});
    CHECK(window(neg_digits(Integer(6), kDyadic), 6) == std::vector<unsigned>{0, 1, 0, 1, 1, 1});
    CHECK(window(neg_digits(Integer(4), kDyadic), 5) == std::vector<unsigned>{0, 0, 1, 1, 1});
    CHECK(neg_digits(Integer(6), kDyadic).signed_value() == -6);
    CHECK_THROWS_AS(neg_digits(Integer(0), kDyadic), std::invalid_argument);
}

TEST_CASE("odometer_step adds one with carry") {
    auto s = odometer_step(Prefix::from_digits(kDyadic, {1, 1, 0}));
    CHECK(s.prefix.digits() == std::vector<unsigned>{0, 0, 1});
    CHECK_FALSE(s.carry_out);
    s = odometer_step(Prefix::from_digits(kDyadic, {1, 1, 1}));
    CHECK(s.prefix.digits() == std::vector<unsigned>{0, 0, 0});
    CHECK(s.carry_out);
    s = odometer_step(Prefix::from_digits(BaseSeq::with_prefix({2, 3}, 2), {1, 2}));
    CHECK(s.prefix.digits() == std::vector<unsigned>{0, 0});
    CHECK(s.carry_out);
}

TEST_CASE("add_with_carry") {
    auto r = add_with_carry(Prefix::from_digits(kDyadic, {0, 1, 1}), to_digits(Integer(6), kDyadic));
    CHECK(r.sum.digits() == std::vector<unsigned>{0, 0, 1});
    CHECK(r.carry_out == 1);
    r = add_with_carry(Prefix::zero(kDyadic, 3), to_digits(Integer(5), kDyadic));
    CHECK(r.sum.digits() == std::vector<unsigned>{1, 0, 1});
    CHECK(r.carry_out == 0);
    r = add_with_carry(Prefix::from_digits(kDyadic, {1, 1}), neg_digits(Integer(1), kDyadic));
    CHECK(r.sum.digits() == std::vector<unsigned>{0, 1});
    CHECK(r.carry_out == 1);
}

TEST_CASE("prefix_translate") {
    CHECK(prefix_translate(Integer(3), Integer(-3), 2, kDyadic).value == 0);
    CHECK(prefix_translate(Integer(5), Integer(8), 3, kDyadic).value == 5);
    CHECK(prefix_translate(Integer(1), Integer(2), 2, BaseSeq::with_prefix({2, 3}, 2)).value == 3);
    CHECK(prefix_translate(Integer(3), Integer(1), 2, kDyadic).wrapped);
    CHECK_THROWS(prefix_translate(Integer(4), Integer(1), 2, kDyadic));
}

TEST_CASE("invalid digits are rejected") {
    CHECK_THROWS(Prefix::from_digits(kMixed, {0, 3}));
    CHECK_THROWS(MixedRadixDigits(kDyadic, DigitsKind::FiniteSupport, {2}));
    CHECK_THROWS(kDyadic.alpha(0));
}

TEST_CASE("Prefix value and digits agree with a division oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t depth = 1 + rng.below(10);
        const Integer v = rng.uniform(Integer(0), Integer(kMixed.beta(depth) - 1));
        const Prefix p = Prefix::from_value(kMixed, depth, v);
        CHECK(p.digits() == oracle_digits(v, kMixed, depth));
        CHECK(Prefix::from_digits(kMixed, p.digits()).value() == v);
    }
}

TEST_CASE("group laws hold on random triples") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const BaseSeq& base = trial % 2 ? kMixed : kDyadic;
        const std::size_t depth = 1 + rng.below(12);
        const Integer beta = base.beta(depth);
        const Integer x = rng.uniform(Integer(0), Integer(beta - 1));
        const Integer n = rng.uniform(Integer(-5000), Integer(5000));
        const Integer m = rng.uniform(Integer(-5000), Integer(5000));
        const Prefix px = Prefix::from_value(base, depth, x);
        // Translation agrees with digit-wise addition of the group element.
        const auto sum = add_with_carry(px, group_digits(n, base));
        CHECK(sum.sum.digits() == oracle_digits(x + n, base, depth));
        CHECK(sum.sum.value() == prefix_translate(x, n, depth, base).value);
        // Homomorphism: f^{n+m} = f^n o f^m.
        const Integer step = prefix_translate(x, m, depth, base).value;
        CHECK(prefix_translate(step, n, depth, base).value == prefix_translate(x, Integer(n + m), depth, base).value);
        // Inverse through neg_digits.
        if (n > 0) {
            const auto there = add_with_carry(px, to_digits(n, base));
            const auto back = add_with_carry(there.sum, neg_digits(n, base));
            CHECK(back.sum == px);
        }
        // The odometer step is translation by one.
        CHECK(odometer_step(px).prefix.value() == prefix_translate(x, Integer(1), depth, base).value);
    }
}

TEST_CASE("digit representations normalize to minimal windows") {
    const MixedRadixDigits a(kDyadic, DigitsKind::FiniteSupport, {1, 0, 0, 0});
    CHECK(a == to_digits(Integer(1), kDyadic));
    const MixedRadixDigits b(kDyadic, DigitsKind::CofiniteMax, {1, 1, 1});
    CHECK(b == neg_digits(Integer(1), kDyadic));
    CHECK(group_digits(Integer(-6), kDyadic) == neg_digits(Integer(6), kDyadic));
}
