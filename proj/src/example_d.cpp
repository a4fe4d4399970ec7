#include "odo/example_d.hpp"

#include "odo/parallel.hpp"
#include "odo/rng.hpp"

#include <stdexcept>

namespace odo {

namespace {

constexpr unsigned kMaxMarkerIndex = 30;
constexpr std::size_t kEnumerationLimit = std::size_t{1} << 17;

void require_k(unsigned k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k > kMaxMarkerIndex) throw std::invalid_argument("k too large");
}

unsigned long ul(std::size_t v) { return static_cast<unsigned long>(v); }

// Binary digit i (1-based) of n >= 0.
bool bit(const Integer& n, std::size_t i) { return mpz_tstbit(n.get_mpz_t(), i - 1) != 0; }

}  // namespace

std::size_t MarkerSystem::marker(unsigned k) {
    require_k(k);
    return std::size_t{1} << (2 * k);
}

std::optional<unsigned> MarkerSystem::marker_index(std::size_t n) {
    for (unsigned k = 1; k <= kMaxMarkerIndex; ++k) {
        const std::size_t m = marker(k);
        if (m == n) return k;
        if (m > n) break;
    }
    return std::nullopt;
}

Rational MarkerSystem::p(std::size_t n) {
    if (n == 0) throw std::out_of_range("positions are 1-based");
    if (const auto k = marker_index(n)) return inv_pow(2, *k);
    return inv_pow(2, ul(n));
}

MeasureSeq MarkerSystem::measure() {
    static const MeasureSeq ms = MeasureSeq::example_d();
    return ms;
}

PatternSet B_set(unsigned k) {
    const std::size_t m = MarkerSystem::marker(k);
    return {MarkerSystem::measure(), {{m, DigitSet{1}}}, ZeroOffMarkersTail{MarkerSystem::kMarkerBase}, m};
}

bool I_membership(const Integer& n, unsigned k) {
    require_k(k);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const std::size_t lo = MarkerSystem::marker(k) + 3;
    const std::size_t hi = MarkerSystem::marker(k + 1) - 3;
    const std::size_t top = bit_length(n);
    if (top > hi) return false;  // a 1-digit above m_{k+1} - 3
    for (std::size_t i = lo; i <= top; ++i)
        if (bit(n, i)) return true;
    return false;
}

bool in_I(const Integer& n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    for (unsigned l = 1; l < kMaxMarkerIndex && MarkerSystem::marker(l) + 3 <= bit_length(n); ++l)
        if (I_membership(n, l)) return true;
    return false;
}

IBlock I_block(unsigned k) {
    require_k(k);
    return {pow2(ul(MarkerSystem::marker(k) + 2)), Integer(pow2(ul(MarkerSystem::marker(k + 1) - 3)) - 1)};
}

Integer I_count(unsigned k) {
    require_k(k);
    return pow2(ul(MarkerSystem::marker(k + 1) - 3)) - pow2(ul(MarkerSystem::marker(k) + 2));
}

Integer I_count_upto(const Integer& n) {
    Integer total = 0;
    for (unsigned l = 1; l < kMaxMarkerIndex; ++l) {
        const IBlock b = I_block(l);
        if (b.first > n) break;
        total += (n < b.last ? n : b.last) - b.first + 1;
    }
    return total;
}

ClaimReport claim1_verify(unsigned k) {
    require_k(k);
    ClaimReport rep;
    rep.claim = "claim1";
    rep.param("k", std::to_string(k));
    const Integer formula = I_count(k);
    rep.value("count", formula);
    if (k == 1) {
        // Every member lies below 2^{m_2 - 3}.
        const unsigned long limit = pow2(ul(MarkerSystem::marker(2) - 3)).get_ui();
        unsigned long brute = 0;
        for (unsigned long n = 1; n < limit; ++n)
            if (I_membership(Integer(n), 1)) ++brute;
        rep.value("enumerated_count", Integer(brute));
        rep.check("exhaustive count over n < 2^13 equals the formula", Integer(brute), Cmp::Equal, formula);
    } else {
        const std::size_t lo = MarkerSystem::marker(k) + 3;
        const std::size_t hi = MarkerSystem::marker(k + 1) - 3;
        // Numbers with no 1-digit above hi, minus those with none above lo - 1.
        const Integer by_prefix = (pow2(ul(hi)) - 1) - (pow2(ul(lo - 1)) - 1);
        rep.check("prefix-count difference equals the formula", by_prefix, Cmp::Equal, formula);
        if (k <= 6) {
            // Sum over the position of the leading 1-digit.
            Integer by_top = 0;
            for (std::size_t i = lo; i <= hi; ++i) by_top += pow2(ul(i - 1));
            rep.check("leading-digit count equals the formula", by_top, Cmp::Equal, formula);
        }
    }
    rep.settle_from_checks();
    return rep;
}

ClaimReport claim2_density(unsigned k, std::optional<Integer> window) {
    require_k(k);
    ClaimReport rep;
    rep.claim = "claim2";
    rep.param("k", std::to_string(k));
    const bool default_window = !window.has_value();
    const Integer n = window.value_or(pow2(ul(MarkerSystem::marker(k + 1) - 3)));
    if (n < 1) throw std::invalid_argument("window must be >= 1");
    rep.param("window", n);
    const Integer closed = I_count_upto(n);
    rep.value("count", closed);
    if (n <= Integer(static_cast<unsigned long>(kEnumerationLimit) * 32)) {
        unsigned long brute = 0;
        for (unsigned long v = 1; v <= n.get_ui(); ++v)
            if (in_I(Integer(v))) ++brute;
        rep.check("exhaustive count equals the block count", Integer(brute), Cmp::Equal, closed);
    }
    Rational ratio(closed, n);
    ratio.canonicalize();
    rep.value("ratio", ratio);
    if (default_window) {
        const std::size_t gap = MarkerSystem::marker(k + 1) - MarkerSystem::marker(k) - 5;
        const Rational bound = 1 - inv_pow(2, ul(gap));
        rep.value("bound", bound);
        rep.value("ratio_equals_bound", ratio == bound ? "true" : "false");
        rep.check("ratio >= 1 - 2^(m_k - m_{k+1} + 5)", ratio, Cmp::GreaterEq, bound);
    }
    rep.settle_from_checks();
    return rep;
}

ClaimReport bk_measure_chain(unsigned kmax, const Rational& tol) {
    require_k(kmax);
    ClaimReport rep;
    rep.claim = "bk-chain";
    rep.param("kmax", std::to_string(kmax));
    rep.param("tolerance", tol);
    std::vector<RatInterval> enc;
    bool capped = false;
    for (unsigned k = 1; k <= kmax; ++k) {
        const CertifiedValue cv = pattern_measure(B_set(k), tol);
        capped = capped || cv.cap_reached;
        enc.push_back(cv.enclosure);
        const std::string name = "mu(B_" + std::to_string(k) + ")";
        rep.enclosure(name, cv.enclosure);
        rep.check(name + " upper bound < 1/" + std::to_string(k), cv.enclosure.hi(), Cmp::Less, Rational(1, k));
        rep.check(name + " enclosure width <= tol", cv.enclosure.width(), Cmp::LessEq, tol);
    }
    for (unsigned k = 1; k < kmax; ++k)
        rep.check("mu(B_" + std::to_string(k + 1) + ") < mu(B_" + std::to_string(k) + ")", enc[k].hi(), Cmp::Less,
                  enc[k - 1].lo());
    rep.settle_from_checks();
    if (capped && rep.verdict != Verdict::Verified) rep.verdict = Verdict::Inconclusive;
    return rep;
}

std::optional<std::size_t> forced_coordinate(const Integer& n, unsigned l) {
    require_k(l);
    const MixedRadixDigits neg = neg_digits(n, BaseSeq::constant(2));
    const std::size_t lo = MarkerSystem::marker(l) + 2;
    const std::size_t hi = MarkerSystem::marker(l + 1) - 3;
    for (std::size_t i = hi; i >= lo; --i)
        if (neg.digit(i) == 0 && neg.digit(i + 1) == 1) return i;
    return std::nullopt;
}

namespace {

void record_sampler(ClaimReport& rep, const ScanOptions& opts) {
    rep.param("seed", std::to_string(opts.seed));
    rep.param("sampler", "mt19937_64, rejection sampling on 64-bit words");
    rep.param("tolerance", opts.tol);
}

}  // namespace

ClaimReport dc1_scan(unsigned k, unsigned l, const ScanOptions& opts, std::vector<ScanRow>* rows) {
    require_k(k);
    require_k(l);
    if (l <= k) throw std::invalid_argument("dc1 requires l > k");
    ClaimReport rep;
    rep.claim = "dc1";
    rep.param("k", std::to_string(k));
    rep.param("l", std::to_string(l));
    record_sampler(rep, opts);

    const IBlock block = I_block(l);
    const Integer size = block.last - block.first + 1;
    std::vector<Integer> ns;
    if (size <= Integer(static_cast<unsigned long>(opts.samples + opts.smallest))) {
        for (Integer n = block.first; n <= block.last; ++n) ns.push_back(n);
        rep.param("selection", "exhaustive");
    } else {
        for (std::size_t i = 0; i < opts.smallest; ++i) ns.push_back(block.first + Integer(ul(i)));
        Rng rng(opts.seed);
        for (std::size_t i = 0; i < opts.samples; ++i) ns.push_back(rng.uniform(block.first, block.last));
        rep.param("selection", std::to_string(opts.smallest) + " smallest + " + std::to_string(opts.samples) +
                                   " seeded samples");
    }

    const PatternSet b = B_set(k);
    const TranslateEngine engine(b, opts.tol, opts.cap);
    std::vector<ScanRow> out(ns.size());
    parallel_for(ns.size(), opts.jobs, [&](std::size_t i) {
        const CertifiedValue cv = engine.measure(ns[i], Direction::Preimage);
        const auto f = forced_coordinate(ns[i], l);
        out[i] = {ns[i], cv.enclosure, cv.cap_reached, f ? std::optional<std::size_t>(*f + 1) : std::nullopt};
    });

    const Rational threshold(1, l);
    const Rational forced_bound = inv_pow(2, ul(MarkerSystem::marker(l) + 2));
    Rational max_hi = 0, max_forced_hi = 0, max_lo = 0;
    std::size_t refuted = 0, unresolved = 0, forced = 0;
    for (const auto& r : out) {
        max_hi = std::max(max_hi, r.enclosure.hi());
        max_lo = std::max(max_lo, r.enclosure.lo());
        if (r.enclosure.lo() >= threshold) ++refuted;
        else if (!(r.enclosure.hi() < threshold)) ++unresolved;
        if (r.forced) {
            ++forced;
            max_forced_hi = std::max(max_forced_hi, r.enclosure.hi());
        }
    }
    rep.value("evaluated", Integer(ul(out.size())));
    rep.value("forced_certificates", Integer(ul(forced)));
    rep.value("max_upper_bound", max_hi);
    rep.value("forced_bound", forced_bound);
    const RatInterval bk = pattern_measure(b, opts.tol).enclosure;
    rep.enclosure("mu(B_k)", bk);
    rep.check("mu(B_k) upper bound < 1/k", bk.hi(), Cmp::Less, Rational(1, k));
    rep.check("max certified upper bound of mu(f^-n(B_k)) < 1/l", max_hi, Cmp::Less, threshold);
    if (forced > 0)
        rep.check("max upper bound where the forced coordinate applies <= 2^-(m_l + 2)", max_forced_hi, Cmp::LessEq,
                  forced_bound);
    rep.settle_from_checks();
    if (refuted > 0)
        rep.verdict = Verdict::Refuted;
    else if (unresolved > 0)
        rep.verdict = Verdict::Inconclusive;
    if (rows) *rows = std::move(out);
    return rep;
}

CarryClass carry_class(const Integer& n, unsigned k) {
    require_k(k);
    const std::size_t len = MarkerSystem::marker(k) - 2;
    if (n < 1 || n >= pow2(ul(len))) throw std::invalid_argument("carry_class: n outside [1, 2^(m_k - 2) - 1]");
    const MeasureSeq ms = MarkerSystem::measure();
    const CarryState st = window_carry_masses(ms, neg_digits(n, ms.base()), len);
    return {st.mass[0] >= Rational(1, 2) ? 0u : 1u, st.mass[0], st.mass[1]};
}

std::string_view to_string(Dc2Window w) { return w == Dc2Window::Statement ? "statement" : "proof"; }

ClaimReport dc2_count(unsigned k, Dc2Window window, const ScanOptions& opts, std::vector<ScanRow>* rows) {
    require_k(k);
    ClaimReport rep;
    rep.claim = "dc2";
    rep.param("k", std::to_string(k));
    rep.param("window", std::string(to_string(window)));
    record_sampler(rep, opts);

    const std::size_t m = MarkerSystem::marker(k);
    const Integer size = window == Dc2Window::Statement ? pow2(ul(m - 1)) : Integer(pow2(ul(m)) - 1);
    const bool enumerate = size <= Integer(ul(kEnumerationLimit));
    std::vector<Integer> ns;
    if (enumerate) {
        for (unsigned long n = 1; n <= size.get_ui(); ++n) ns.emplace_back(n);
        rep.param("selection", "exhaustive");
    } else {
        Rng rng(opts.seed);
        for (std::size_t i = 0; i < opts.samples; ++i) ns.push_back(rng.uniform(Integer(1), size));
        rep.param("selection", std::to_string(opts.samples) + " seeded samples");
    }

    const PatternSet b = B_set(k);
    const MeasureSeq ms = b.measure();
    const TranslateEngine engine(b, opts.tol, opts.cap);
    std::vector<ScanRow> out(ns.size());
    parallel_for(ns.size(), opts.jobs, [&](std::size_t i) {
        const CertifiedValue cv = engine.measure(ns[i], Direction::Preimage);
        out[i] = {ns[i], cv.enclosure, cv.cap_reached, std::nullopt};
    });

    const Rational sixteenth(1, 16);
    std::size_t pass = 0, fail = 0, unresolved = 0;
    for (const auto& r : out) {
        if (r.enclosure.lo() > sixteenth) ++pass;
        else if (r.enclosure.hi() <= sixteenth) ++fail;
        else ++unresolved;
    }
    const Rational denom = enumerate ? Rational(size) : Rational(Integer(ul(out.size())));
    const Rational fraction = Rational(Integer(ul(pass))) / denom;
    rep.value("window_size", size);
    rep.value("certified_pass", Integer(ul(pass)));
    rep.value("certified_fail", Integer(ul(fail)));
    rep.value("unresolved", Integer(ul(unresolved)));
    rep.value("pass_fraction", fraction);

    // The three factors the proof needs above 1/2.
    const Rational f1 = ms.prob(m - 1, 0);
    const Rational f2 = ms.prob(m, 0);
    const RatInterval tk = pattern_tail_measure(b, m + 1, opts.tol, opts.cap).enclosure;
    rep.value("mu_{m_k - 1}(0)", f1);
    rep.value("mu_{m_k}(0)", f2);
    rep.enclosure("mu(T_k)", tk);
    const bool factors_ok = f1 > Rational(1, 2) && f2 > Rational(1, 2) && tk.lo() > Rational(1, 2);
    rep.value("proof_factors_exceed_half", factors_ok ? "true" : "false");
    if (!factors_ok) rep.notes.push_back("the proof's three factors are not all above 1/2 at this k");

    rep.check("fraction of certified passes > 1/16", fraction, Cmp::Greater, sixteenth);
    rep.settle_from_checks();
    if (!enumerate) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("sampled window: the fraction is an estimate, not a certificate");
    }

    if (window == Dc2Window::Proof && enumerate && m >= 3) {
        const std::size_t len = m - 2;
        const unsigned long classes = pow2(ul(len)).get_ui() - 1;
        std::vector<CarryClass> cc(classes);
        parallel_for(classes, opts.jobs, [&](std::size_t v) { cc[v] = carry_class(Integer(ul(v + 1)), k); });
        unsigned long f0 = 0;
        for (const auto& c : cc) f0 += c.c == 0 ? 1 : 0;
        const unsigned long f1count = classes - f0;
        const unsigned proof_case = 2 * f0 >= classes ? 1 : 2;
        rep.value("F0", Integer(f0));
        rep.value("F1", Integer(f1count));
        rep.value("J_case", Integer(proof_case));
        rep.param("J_reading", "n mod 2^(m_k - 2) in F_case");

        const Integer low = pow2(ul(len));
        const unsigned want_m1 = proof_case == 1 ? 0 : 1;  // -n(m_k - 1)
        const unsigned want_m = proof_case == 1 ? 1 : 0;   // -n(m_k)
        const unsigned want_c = proof_case == 1 ? 0 : 1;
        const RatInterval tail_factor = (f1 * f2) * tk;
        std::size_t jsize = 0, ff_pass = 0, ff_fail = 0, ff_unres = 0, corr_pass = 0;
        std::optional<Integer> first_failure;
        for (const auto& r : out) {
            const Integer v = r.n % low;
            if (v == 0) continue;
            const CarryClass& c = cc[v.get_ui() - 1];
            if (c.c != want_c) continue;
            const MixedRadixDigits neg = neg_digits(r.n, ms.base());
            if (neg.digit(m - 1) != want_m1 || neg.digit(m) != want_m) continue;
            ++jsize;
            const RatInterval four = (want_c == 0 ? c.mass0 : c.mass1) * tail_factor;
            if (r.enclosure.lo() >= four.hi()) {
                ++ff_pass;
            } else if (r.enclosure.hi() < four.lo()) {
                ++ff_fail;
                if (!first_failure) first_failure = r.n;
            } else {
                ++ff_unres;
            }
            // Mass of the translated prefixes y = x - v, x in D(n, c): y + v carries
            // out of the window exactly when x < v, i.e. when c = 0.
            const CarryState ys = window_carry_masses(ms, to_digits(v, ms.base()), len);
            const Rational& e = ys.mass[want_c == 0 ? 1 : 0];
            if (r.enclosure.lo() >= (e * tail_factor).hi()) ++corr_pass;
        }
        const Rational jfrac = Rational(Integer(ul(jsize))) / Rational(Integer(pow2(ul(m)) - 1));
        rep.value("J_size", Integer(ul(jsize)));
        rep.value("J_fraction", jfrac);
        rep.value("J_size_equals_F_case", Integer(ul(jsize)) == Integer(proof_case == 1 ? f0 : f1count) ? "true" : "false");
        rep.value("J_fraction_at_least_1/16", jfrac >= sixteenth ? "true" : "false");
        rep.value("four_factor_pass", Integer(ul(ff_pass)));
        rep.value("four_factor_fail", Integer(ul(ff_fail)));
        rep.value("four_factor_unresolved", Integer(ul(ff_unres)));
        rep.value("four_factor_holds_on_J", ff_pass == jsize ? "true" : "false");
        if (first_failure) rep.value("four_factor_first_failure_n", *first_failure);
        rep.value("translated_prefix_bound_pass", Integer(ul(corr_pass)));
        rep.value("translated_prefix_bound_holds_on_J", corr_pass == jsize ? "true" : "false");
        if (ff_pass != jsize)
            rep.notes.push_back(
                "mu(D(n,c)) measures x-prefixes, but the containment places y = x + (-n) in that class; "
                "the product with the translated-prefix mass is the bound that holds");
    }
    if (rows) *rows = std::move(out);
    return rep;
}

WitnessProvider marker_witness_provider(unsigned k) { return {B_set(k), 512, false}; }

}  // namespace odo
