#include "odo/measure.hpp"
#include "odo/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace odo;
using odo::test::enclosure_of;
using odo::test::value_of;

namespace {

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("example-d probabilities") {
    const MeasureSeq ms = MeasureSeq::example_d();
    CHECK(ms.prob(1, 1) == q("1/2"));
    CHECK(ms.prob(2, 1) == q("1/4"));
    CHECK(ms.prob(3, 1) == q("1/8"));
    CHECK(ms.prob(4, 1) == q("1/2"));   // m_1 = 4
    CHECK(ms.prob(16, 1) == q("1/4"));  // m_2 = 16
    CHECK(ms.prob(64, 1) == q("1/8"));
    CHECK(ms.prob(17, 0) == 1 - inv_pow(2, 17));
    for (std::size_t n = 1; n <= 80; ++n) CHECK(ms.prob(n, 0) + ms.prob(n, 1) == 1);
}

TEST_CASE("lambda_ratio") {
    const MeasureSeq ms = MeasureSeq::example_d();
    CHECK(lambda_ratio(ms, 1, 0) == 1);
    CHECK(lambda_ratio(ms, 2, 1) == q("1/3"));
    CHECK(lambda_ratio(ms, 2, 0) == 3);
    const MeasureSeq u = MeasureSeq::uniform(BaseSeq::with_prefix({2, 3, 5}, 2));
    for (std::size_t n = 1; n <= 5; ++n)
        for (unsigned j = 0; j < u.base().alpha(n); ++j) CHECK(lambda_ratio(u, n, j) == 1);
}

TEST_CASE("mu_cylinder") {
    const MeasureSeq ms = MeasureSeq::example_d();
    CHECK(mu_cylinder(ms, Prefix::from_digits(ms.base(), {0, 1})) == q("1/8"));
    CHECK(mu_cylinder(ms, Prefix::from_digits(ms.base(), {1, 1, 1, 1})) == q("1/128"));
    CHECK(mu_cylinder(ms, Prefix::zero(ms.base(), 0)) == 1);
}

TEST_CASE("cylinder masses add up to one") {
    const MeasureSeq d = MeasureSeq::example_d();
    const MeasureSeq mixed = MeasureSeq::uniform(BaseSeq::with_prefix({3, 2, 5}, 2));
    for (const MeasureSeq* ms : {&d, &mixed}) {
        for (std::size_t depth : {1u, 5u, 12u}) {
            Rational total = 0;
            const Integer beta = ms->base().beta(depth);
            for (Integer v = 0; v < beta; ++v) total += mu_cylinder(*ms, Prefix::from_value(ms->base(), depth, v));
            CHECK(total == 1);
        }
    }
}

TEST_CASE("condition (*)") {
    const auto d = condition_star(MeasureSeq::example_d(), 64);
    CHECK(d.verdict == Verdict::Verified);
    CHECK(parse_rational(value_of(d, "certified_lower_bound")) > 0);
    CHECK(value_of(d, "tail_dominates") == "true");
    CHECK(value_of(d, "certified_lower_bound") == value_of(d, "min_term"));

    const auto u = condition_star(MeasureSeq::uniform(BaseSeq::constant(2)), 16);
    CHECK(u.verdict == Verdict::Verified);
    CHECK(value_of(u, "min_term") == "1/1");

    const auto de = condition_star(MeasureSeq::double_exponential(), 8);
    CHECK(parse_rational(value_of(de, "min_term")) > 0);
}

TEST_CASE("non-atomicity") {
    // The marker coordinates carry max mass 1 - 2^-k, a convergent complement sum.
    const auto d = nonatomic_check(MeasureSeq::example_d(), 64);
    CHECK(d.verdict == Verdict::Refuted);
    CHECK(enclosure_of(d, "product_of_max").lo() > 0);

    CHECK(nonatomic_check(MeasureSeq::uniform(BaseSeq::constant(2)), 16).verdict == Verdict::Verified);

    const auto four = nonatomic_check(MeasureSeq::dyadic(4), 16);
    CHECK(four.verdict == Verdict::Refuted);
    CHECK(enclosure_of(four, "product_of_max").lo() >= q("2/3"));
}

TEST_CASE("tail_product_bounds") {
    const MeasureSeq ms = MeasureSeq::dyadic(2);
    CHECK(tail_product_bounds(ms, 3, TailFilter::all(), 0) == RatInterval(q("3/4"), q("7/8")));
    CHECK(tail_product_bounds(ms, 3, TailFilter::range_until(2), 0) == RatInterval(q("1"), q("1")));

    const RatInterval b2 = tail_product_bounds(MeasureSeq::example_d(), 17, TailFilter::off_markers(4), 0);
    CHECK(b2.lo() >= 1 - inv_pow(2, 16));
    CHECK(b2.hi() <= 1);
}

TEST_CASE("tail enclosures are nested and tight") {
    const MeasureSeq ms = MeasureSeq::example_d();
    RatInterval prev = RatInterval::unit();
    for (std::size_t k : {0u, 4u, 16u, 64u, 256u}) {
        const RatInterval iv = tail_product_bounds(ms, 5, TailFilter::off_markers(4), 0, k);
        CHECK(prev.contains(iv));
        prev = iv;
    }
    const auto tight = tail_product_enclosure(ms, 1, TailFilter::off_markers(4), 0, default_tolerance());
    CHECK_FALSE(tight.cap_reached);
    CHECK(tight.enclosure.width() <= default_tolerance());
}

TEST_CASE("interval products contain the exact product") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        RatInterval acc(Rational(1));
        Rational exact = 1;
        for (int i = 0; i < 6; ++i) {
            const Rational x = Rational(rng.uniform(Integer(1), Integer(99))) / 100;
            const Rational slack = Rational(rng.uniform(Integer(0), Integer(5))) / 1000;
            acc = acc * RatInterval(x - slack, x + slack);
            exact *= x;
        }
        CHECK(acc.contains(exact));
        CHECK(acc.complement().contains(Rational(1 - exact)));
    }
}

TEST_CASE("invalid measures are rejected") {
    const BaseSeq b = BaseSeq::constant(2);
    CHECK_THROWS(MeasureSeq(b, {{q("1/2"), q("1/3")}}, UniformRule{}));
    CHECK_THROWS(MeasureSeq(b, {{Rational(0), Rational(1)}}, UniformRule{}));
    CHECK_THROWS(MeasureSeq(b, {{Rational(1)}}, UniformRule{}));
}
