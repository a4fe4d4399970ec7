#include "odo/example_d.hpp"
#include "odo/pattern.hpp"
#include "odo/rng.hpp"
#include "pattern_oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace odo;
using namespace odo::test;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const BaseSeq kDyadic = BaseSeq::constant(2);

}  // namespace

TEST_CASE("cylinder_translate") {
    const auto c = Prefix::from_digits(kDyadic, {1, 1});
    CHECK(cylinder_translate(c, Integer(3), Direction::Preimage).value() == 0);
    CHECK(cylinder_translate(c, Integer(4), Direction::Preimage) == c);
    CHECK(cylinder_translate(c, Integer(4), Direction::Image) == c);
    CHECK(cylinder_translate(Prefix::from_digits(kDyadic, {0, 1}), Integer(1), Direction::Image).value() == 3);
}

TEST_CASE("boolean algebra on cylinder unions") {
    const auto zero1 = CylinderUnion::single(Prefix::from_digits(kDyadic, {0}));
    CHECK(zero1.complement() == CylinderUnion::single(Prefix::from_digits(kDyadic, {1})));
    const CylinderUnion u(kDyadic, 2, {Integer(0), Integer(2)});
    const auto c01 = CylinderUnion::single(Prefix::from_digits(kDyadic, {0, 1}));
    CHECK(intersect(u, c01) == c01);
    CHECK(difference(u, c01) == CylinderUnion::single(Prefix::zero(kDyadic, 2)));
    CHECK(unite(u, u.complement()) == CylinderUnion::full(kDyadic, 2));
    CHECK(intersect(u, u.complement()).empty());
    CHECK_THROWS(unite(zero1, c01));
    CHECK(zero1.refine(3) == CylinderUnion(kDyadic, 3, {Integer(0), Integer(2), Integer(4), Integer(6)}));

    const MeasureSeq ms = MeasureSeq::example_d();
    Rational sum = 0;
    for (const auto& c : u.cylinders()) sum += mu_cylinder(ms, c);
    CHECK(u.measure(ms) == sum);
    CHECK(u.measure(ms) + u.complement().measure(ms) == 1);
}

TEST_CASE("pattern_measure") {
    const MeasureSeq ms = MeasureSeq::example_d();
    CHECK(pattern_measure(PatternSet::full(ms)).enclosure == RatInterval(Rational(1)));
    const auto c = Prefix::from_digits(kDyadic, {0, 1, 1});
    CHECK(pattern_measure(PatternSet::cylinder(ms, c)).enclosure == RatInterval(mu_cylinder(ms, c)));

    const auto b1 = pattern_measure(B_set(1));
    CHECK_FALSE(b1.cap_reached);
    CHECK(b1.enclosure.lo() > q("46/100"));
    CHECK(b1.enclosure.hi() <= q("1/2"));
    CHECK(b1.enclosure.width() <= default_tolerance());
}

TEST_CASE("pattern sets validate and canonicalize") {
    const MeasureSeq ms = MeasureSeq::example_d();
    CHECK_THROWS(PatternSet(ms, {{1, {}}}, FreeTail{}));
    CHECK_THROWS(PatternSet(ms, {{1, {2}}}, FreeTail{}));
    CHECK(PatternSet(ms, {{3, {0, 1}}}, FreeTail{}) == PatternSet::full(ms));
    const PatternSet s(ms, {{2, {1}}}, FreeTail{});
    CHECK(s.allows(2, 1));
    CHECK_FALSE(s.allows(2, 0));
    CHECK(s.allowed_mass(2) == q("1/4"));
    CHECK(s.with_constraints({{5, {0}}}).allowed_mass(5) == ms.prob(5, 0));
}

TEST_CASE("translating the first digit") {
    const MeasureSeq ms = MeasureSeq::example_d();
    const PatternSet s(ms, {{1, {1}}}, FreeTail{});
    CHECK(translate_preimage_measure(s, Integer(1), Direction::Preimage).enclosure == RatInterval(q("1/2")));
    const auto c = Prefix::from_digits(kDyadic, {1, 0, 1});
    CHECK(translate_preimage_measure(PatternSet::cylinder(ms, c), Integer(16), Direction::Preimage).enclosure ==
          RatInterval(mu_cylinder(ms, c)));
}

TEST_CASE("carry DP matches exhaustive enumeration") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance in = random_instance(rng, 10);
        const PatternSet s(in.ms, in.constraints, FreeTail{});
        const Integer beta = beta_of(in.ms.base(), in.depth);
        const Integer n = rng.uniform(Integer(1), Integer(beta > 1 ? beta - 1 : Integer(1)));
        const auto pre = translate_preimage_measure(s, n, Direction::Preimage);
        const auto img = translate_preimage_measure(s, n, Direction::Image);
        CHECK(pre.enclosure == RatInterval(brute_force(in, n)));
        CHECK(img.enclosure == RatInterval(brute_force(in, Integer(-n))));
    }
}

TEST_CASE("cylinder translates agree with mu_cylinder") {
    Rng rng(5);
    const MeasureSeq ms = MeasureSeq::example_d();
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t depth = 1 + rng.below(12);
        const auto c = Prefix::from_value(kDyadic, depth, rng.uniform(Integer(0), Integer(pow2(depth) - 1)));
        const Integer n = rng.uniform(Integer(1), Integer(pow2(40)));
        for (Direction dir : {Direction::Preimage, Direction::Image}) {
            const auto got = translate_preimage_measure(PatternSet::cylinder(ms, c), n, dir);
            CHECK(got.enclosure == RatInterval(mu_cylinder(ms, cylinder_translate(c, n, dir))));
        }
    }
}

TEST_CASE("first-return ratio law") {
    const MeasureSeq ms = MeasureSeq::example_d();
    for (std::size_t depth = 1; depth <= 8; ++depth) {
        for (Integer v = 0; v < pow2(depth); ++v) {
            const auto c = Prefix::from_value(kDyadic, depth, v);
            const Rational back = mu_cylinder(ms, cylinder_translate(c, Integer(1), Direction::Preimage));
            std::size_t r = 1;
            while (r <= depth && c.digit(r) == 0) ++r;
            Rational factor = 1;
            if (r > depth) {
                for (std::size_t k = 1; k <= depth; ++k) factor /= lambda_ratio(ms, k, 0);
                CHECK(back == mu_cylinder(ms, c) * factor);
            } else {
                factor = lambda_ratio(ms, r, c.digit(r));
                for (std::size_t k = 1; k < r; ++k) factor *= lambda_ratio(ms, k, 0);
                CHECK(back * factor == mu_cylinder(ms, c));
            }
        }
    }
}

TEST_CASE("the uniform measure is preserved") {
    Rng rng(31);
    const MeasureSeq ms = MeasureSeq::uniform(kDyadic);
    for (int trial = 0; trial < 60; ++trial) {
        Instance in = random_instance(rng, 12);
        const PatternSet s(ms, in.constraints.empty() || in.ms.base() != kDyadic ? std::map<std::size_t, DigitSet>{{3, {1}}}
                                                                                   : in.constraints,
                           FreeTail{});
        const Integer n = rng.uniform(Integer(1), Integer(pow2(30)));
        const auto base = pattern_measure(s).enclosure;
        CHECK(translate_preimage_measure(s, n, Direction::Preimage).enclosure == base);
        CHECK(translate_preimage_measure(s, n, Direction::Image).enclosure == base);
    }
}

TEST_CASE("enclosures of a set and its complement cover one") {
    const MeasureSeq ms = MeasureSeq::example_d();
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t i = 1 + rng.below(20);
        const PatternSet s(ms, {{i, {1}}, {70, {0}}}, FreeTail{});
        const PatternSet t(ms, {{i, {0}}, {70, {0}}}, FreeTail{});
        const PatternSet u(ms, {{70, {1}}}, FreeTail{});
        const Integer n = rng.uniform(Integer(1), Integer(pow2(80)));
        const auto sum = translate_preimage_measure(s, n, Direction::Preimage).enclosure +
                         translate_preimage_measure(t, n, Direction::Preimage).enclosure +
                         translate_preimage_measure(u, n, Direction::Preimage).enclosure;
        CHECK(sum.contains(Rational(1)));
    }
}

TEST_CASE("B_1 translates refine monotonically") {
    const PatternSet b1 = B_set(1);
    for (const Integer& n : std::vector<Integer>{Integer(64), Integer(1000), Integer(pow2(20) + 5)}) {
        RatInterval prev = RatInterval::unit();
        for (unsigned bits : {8u, 16u, 30u, 40u}) {
            const auto iv = TranslateEngine(b1, inv_pow(2, bits)).measure(n, Direction::Preimage).enclosure;
            CHECK(iv.width() <= inv_pow(2, bits));
            CHECK(prev.contains(iv));
            prev = iv;
        }
    }
}

TEST_CASE("carry masses over a window") {
    const MeasureSeq ms = MeasureSeq::uniform(kDyadic);
    // x + 1 carries out of two coordinates exactly when x_1 = x_2 = 1.
    const auto cs = window_carry_masses(ms, to_digits(Integer(1), kDyadic), 2);
    CHECK(cs.mass[1] == q("1/4"));
    CHECK(cs.mass[0] == q("3/4"));
}
