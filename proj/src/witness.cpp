#include "odo/witness.hpp"

namespace odo {

namespace {

unsigned min_allowed(const PatternSet& s, std::size_t i) {
    const unsigned alpha = s.measure().base().alpha(i);
    for (unsigned d = 0; d < alpha; ++d)
        if (s.allows(i, d)) return d;
    throw std::logic_error("pattern set with an empty coordinate");
}

RatInterval difference_measure(const RatInterval& whole, const std::optional<RatInterval>& part) {
    if (!part) return whole;
    return whole - *part;
}

}  // namespace

std::pair<RatInterval, RatInterval> recertify(const WitnessPair& w, const Rational& tol) {
    const RatInterval base_a = pattern_measure(w.a_base, tol).enclosure;
    const RatInterval base_img = TranslateEngine(w.a_base, tol).measure(w.j, Direction::Image).enclosure;
    std::optional<RatInterval> ex_a, ex_img;
    if (w.a_excluded) {
        ex_a = pattern_measure(*w.a_excluded, tol).enclosure;
        ex_img = TranslateEngine(*w.a_excluded, tol).measure(w.j, Direction::Image).enclosure;
    }
    // f^j is a bijection, so f^j(A_base \ A_ex) = f^j(A_base) \ f^j(A_ex).
    return {difference_measure(base_a, ex_a), difference_measure(base_img, ex_img)};
}

WitnessPair hc_witness(const WitnessProvider& provider, const Rational& eps, const Rational& tol, std::size_t cap) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const PatternSet& b = provider.b;
    const MeasureSeq& ms = b.measure();
    const BaseSeq& base = ms.base();
    const Rational half = eps / 2;

    ClaimReport rep;
    rep.claim = "witness";
    rep.param("epsilon", eps);

    // N_prod: least N with prod_{n<=N} mu_n(0) < eps/2. The infinite product
    // decides whether one exists; its enclosure is refined only until it
    // falls on one side of eps/2.
    std::optional<std::size_t> n_prod;
    bool attainable = false;
    for (std::size_t factors = 64; factors <= cap; factors *= 2) {
        const RatInterval inf_prod = tail_product_bounds(ms, 1, TailFilter::all(), 0, factors);
        if (inf_prod.lo() >= half || inf_prod.hi() < half || 2 * factors > cap) {
            rep.enclosure("prod_n mu_n(0)", inf_prod);
            attainable = inf_prod.lo() < half;
            break;
        }
    }
    if (attainable) {
        Rational partial = 1;
        for (std::size_t n = 1; n <= cap; ++n) {
            partial *= ms.prob(n, 0);
            if (partial < half) {
                n_prod = n;
                rep.value("N_prod", Integer(static_cast<unsigned long>(n)));
                rep.value("prod_{n<=N_prod} mu_n(0)", partial);
                break;
            }
        }
    }
    if (!n_prod)
        rep.notes.push_back("prod_{n<=N} mu_n(0) >= eps/2 for every N; only the no-carry case is available");

    // N: past B's horizon, with mu(M) > 1 - eps/2 for the tail M of B.
    std::size_t n = std::max<std::size_t>({n_prod.value_or(0), b.horizon(), 1});
    RatInterval tail_m = pattern_tail_measure(b, n + 1, tol, cap).enclosure;
    while (!(tail_m.lo() > 1 - half)) {
        if (n >= cap) throw ProviderFailure("no prefix length N with mu(M) > 1 - eps/2 within the depth cap");
        ++n;
        tail_m = pattern_tail_measure(b, n + 1, tol, cap).enclosure;
    }
    std::vector<unsigned> bdig(n);
    for (std::size_t i = 1; i <= n; ++i) bdig[i - 1] = min_allowed(b, i);
    const Prefix bpre = Prefix::from_digits(base, bdig);
    const Integer beta_n = base.beta(n);

    Rational min_cyl = 1;
    for (std::size_t i = 1; i <= n; ++i) min_cyl *= ms.min_prob(i);
    const Rational delta = half * min_cyl;

    // Candidate k: one nonzero digit at a position above N, optionally with a
    // low part that carries b into position N + 1.
    const bool carry_ok = n_prod.has_value() && bpre.value() > 0;
    if (provider.prefer_carry && !carry_ok)
        rep.notes.push_back("carry case requested but unavailable; using the no-carry case");
    const bool want_carry = provider.prefer_carry && carry_ok;
    const TranslateEngine engine_b(b, tol, cap);
    std::optional<Integer> found;
    RatInterval image_b;
    for (std::size_t a = n + 1; a <= n + provider.search_budget && !found; ++a) {
        Integer k = base.beta(a - 1);
        if (want_carry) k += beta_n - bpre.value();
        const CertifiedValue img = engine_b.measure(k, Direction::Image);
        if (img.enclosure.hi() < delta) {
            found = k;
            image_b = img.enclosure;
        }
    }
    if (!found) throw ProviderFailure("no translate k with certified mu(f^k(B)) < delta within the search budget");

    const Integer k = *found;
    const Integer k1 = k % beta_n;
    const Integer k2 = k - k1;
    const Integer low_sum = bpre.value() + k1;
    const unsigned carry = low_sum >= beta_n ? 1 : 0;

    std::map<std::size_t, DigitSet> beyond;
    for (const auto& [i, set] : b.constraints())
        if (i > n) beyond.emplace(i, set);
    PatternSet a_base(ms, beyond, b.rule(), n);
    std::optional<PatternSet> a_excluded;
    Integer j = k2;
    if (carry == 1) {
        std::map<std::size_t, DigitSet> zeros;
        for (std::size_t i = 1; i <= n; ++i) zeros.emplace(i, DigitSet{0});
        a_excluded = a_base.with_constraints(zeros);
        j = (beta_n - 1) + k2;
    }

    WitnessPair w{eps, n, bdig, delta, k, k1, k2, carry, j, a_base, a_excluded, RatInterval(), RatInterval(), {}};
    const auto [mu_a, mu_img] = recertify(w, tol);
    w.mu_a = mu_a;
    w.mu_image = mu_img;

    rep.value("N", Integer(static_cast<unsigned long>(n)));
    rep.value("delta", delta);
    rep.value("k", k);
    rep.value("k1", k1);
    rep.value("k2", k2);
    rep.value("carry", Integer(carry));
    rep.value("j", j);
    rep.enclosure("mu(M)", tail_m);
    rep.enclosure("mu(f^k(B))", image_b);
    rep.enclosure("mu(A)", mu_a);
    rep.enclosure("mu(f^j(A))", mu_img);
    rep.check("mu([b] ∩ B) / mu([b]) > 1 - eps/2", tail_m.lo(), Cmp::Greater, Rational(1 - half));
    rep.check("mu(f^k(B)) < delta", image_b.hi(), Cmp::Less, delta);
    const bool ok_a = rep.check("mu(A) > 1 - eps", mu_a.lo(), Cmp::Greater, Rational(1 - eps));
    const bool ok_img = rep.check("mu(f^j(A)) < eps", mu_img.hi(), Cmp::Less, eps);
    rep.settle_from_checks();
    if (!ok_a || !ok_img) throw CertificationFailure("recomputed witness measures violate the required bounds");
    w.report = std::move(rep);
    return w;
}

}  // namespace odo
