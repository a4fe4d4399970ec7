#include "odo/operator_lab.hpp"

#include "odo/parallel.hpp"
#include "odo/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace odo {

SimpleFunction apply_T(const SimpleFunction& phi, const Integer& n) {
    if (n < 0) throw std::invalid_argument("apply_T: n must be >= 0");
    std::map<Integer, Rational> moved;
    for (const auto& [v, c] : phi.coefficients())
        moved.emplace(prefix_translate(v, Integer(-n), phi.depth(), phi.base()).value, c);
    return {phi.base(), phi.depth(), std::move(moved)};
}

Rational lp_norm_pow(const SimpleFunction& phi, const MeasureSeq& ms, unsigned p) {
    if (p == 0) throw std::invalid_argument("p must be >= 1");
    if (!(phi.base() == ms.base())) throw std::invalid_argument("lp_norm_pow: base mismatch");
    Rational total = 0;
    for (const auto& t : phi.terms()) total += pow(abs(t.coef), p) * mu_cylinder(ms, t.cylinder);
    return total;
}

namespace {

// Enclosure of x^(1/q) for x >= 0 by bisection, width <= tol.
RatInterval root_enclosure(const Rational& x, unsigned long q, const Rational& tol) {
    if (x == 0 || x == 1 || q == 1) return RatInterval(x);
    Rational lo = 0, hi = std::max(Rational(1), x);
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        if (pow(mid, q) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace

RatInterval lp_norm_pow(const SimpleFunction& phi, const MeasureSeq& ms, const Rational& p, const Rational& tol) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (p.get_den() == 1) return RatInterval(lp_norm_pow(phi, ms, static_cast<unsigned>(p.get_num().get_ui())));
    const unsigned long a = p.get_num().get_ui();
    const unsigned long q = p.get_den().get_ui();
    const auto terms = phi.terms();
    // Each |c|^a^(1/q) is enclosed to tol / (terms * max-weight) so the sum meets tol.
    Rational weight = 0;
    for (const auto& t : terms) weight += mu_cylinder(ms, t.cylinder);
    RatInterval total(Rational(0));
    if (terms.empty()) return total;
    const Rational share = tol / (Rational(static_cast<unsigned long>(terms.size())) * std::max(weight, Rational(1)));
    for (const auto& t : terms) {
        const RatInterval r = root_enclosure(pow(abs(t.coef), a), q, share);
        total = total + mu_cylinder(ms, t.cylinder) * r;
    }
    return total;
}

OrbitSummary orbit_norms(const SimpleFunction& phi, const MeasureSeq& ms, unsigned p, std::size_t steps,
                         std::optional<Rational> threshold, unsigned jobs) {
    if (steps == 0) throw std::invalid_argument("orbit_norms: steps must be >= 1");
    OrbitSummary s;
    s.values.resize(steps);
    parallel_for(steps, jobs, [&](std::size_t i) {
        s.values[i] = lp_norm_pow(apply_T(phi, Integer(static_cast<unsigned long>(i + 1))), ms, p);
    });
    s.min = s.max = s.values[0];
    s.argmin = s.argmax = 1;
    for (std::size_t n = 1; n <= steps; ++n) {
        const Rational& v = s.values[n - 1];
        if (v < s.min) s.min = v, s.argmin = n;
        if (v > s.max) s.max = v, s.argmax = n;
        if (threshold && v < *threshold) ++s.count_below;
    }
    s.threshold = std::move(threshold);
    s.density_below = Rational(static_cast<unsigned long>(s.count_below), static_cast<unsigned long>(steps));
    s.density_below.canonicalize();
    return s;
}

PeriodReport periodic_period(const SimpleFunction& phi) {
    PeriodReport r;
    r.beta = phi.base().beta(phi.depth());
    r.verified = apply_T(phi, r.beta) == phi;
    r.minimal = r.beta;
    // Periods of phi form the subgroup generated by the least one, so
    // scanning divisors upward finds it.
    for (Integer d = 1; d < r.beta; ++d) {
        if (r.beta % d != 0) continue;
        if (apply_T(phi, d) == phi) {
            r.minimal = d;
            break;
        }
    }
    return r;
}

RecurrenceWitness conservativity_witness(const Cylinder& c, const MeasureSeq& ms) {
    const Rational m = mu_cylinder(ms, c);
    if (m <= 0) throw std::invalid_argument("conservativity_witness: cylinder must have positive measure");
    const Integer n = c.base().beta(c.depth());
    const auto u = CylinderUnion::single(c);
    return {n, intersect(u, u.translate(n, Direction::Preimage)).measure(ms)};
}

ClaimReport periodicity_suite(const BaseSeq& base, std::size_t count, std::size_t max_depth, std::uint64_t seed) {
    if (max_depth == 0) throw std::invalid_argument("max depth must be >= 1");
    ClaimReport rep;
    rep.claim = "periodic";
    rep.param("count", std::to_string(count));
    rep.param("max_depth", std::to_string(max_depth));
    rep.param("seed", std::to_string(seed));
    rep.param("sampler", "mt19937_64, rejection sampling on 64-bit words");
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t depth = 1 + rng.below(max_depth);
        const Integer beta = base.beta(depth);
        std::vector<Rational> table(beta.get_ui());
        for (auto& v : table) v = Rational(static_cast<long>(rng.below(7)) - 3);
        const SimpleFunction phi = SimpleFunction::from_table(base, depth, table);
        const SimpleFunction back = apply_T(phi, beta);
        // Cylinders of depth D on which T^{beta_D} phi and phi differ.
        const auto a = phi.table(depth);
        const auto b = back.table(depth);
        unsigned long diff = 0;
        for (std::size_t v = 0; v < a.size(); ++v) diff += a[v] != b[v] ? 1 : 0;
        const PeriodReport pr = periodic_period(phi);
        rep.value("phi_" + std::to_string(i + 1) + "_minimal_period", pr.minimal);
        rep.check("phi_" + std::to_string(i + 1) + " (depth " + std::to_string(depth) +
                      "): cylinders where T^beta_D phi != phi",
                  Rational(Integer(diff)), Cmp::Equal, Rational(0));
        rep.check("phi_" + std::to_string(i + 1) + ": canonical forms equal", Rational(back == phi ? 1 : 0),
                  Cmp::Equal, Rational(1));
    }
    rep.settle_from_checks();
    return rep;
}

ClaimReport conservativity_report(const Cylinder& c, const MeasureSeq& ms) {
    ClaimReport rep;
    rep.claim = "conservative";
    std::string digits;
    for (unsigned d : c.digits()) digits += (digits.empty() ? "" : ",") + std::to_string(d);
    rep.param("cylinder", digits);
    const RecurrenceWitness w = conservativity_witness(c, ms);
    const Rational mc = mu_cylinder(ms, c);
    rep.value("n", w.n);
    rep.value("mu_C", mc);
    rep.value("overlap", w.overlap);
    rep.check("mu(C ∩ f^-n(C)) = mu(C)", w.overlap, Cmp::Equal, mc);
    rep.check("mu(C ∩ f^-n(C)) > 0", w.overlap, Cmp::Greater, Rational(0));
    rep.settle_from_checks();
    return rep;
}

ClaimReport sc_gap_checker(const SimpleFunction& phi, const Rational& lambda, const Integer& k, const Rational& eps,
                           unsigned p, const MeasureSeq& ms) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    if (p == 0) throw std::invalid_argument("p must be >= 1");
    ClaimReport rep;
    rep.claim = "sc-gap";
    rep.param("lambda", lambda);
    rep.param("k", k);
    rep.param("epsilon", eps);
    rep.param("p", std::to_string(p));

    const BaseSeq& base = phi.base();
    const SimpleFunction two = SimpleFunction::constant(base, Rational(2));
    const Rational bound = pow(Rational(eps / 2), p);
    const Rational n1 = lp_norm_pow(phi - two, ms, p);
    const Rational n2 = lp_norm_pow(lambda * apply_T(phi, k) + two, ms, p);
    rep.value("norm_pow_phi_minus_2", n1);
    rep.value("norm_pow_lambda_Tk_phi_plus_2", n2);
    const bool h1 = rep.check("||phi - 2||_p^p < (eps/2)^p", n1, Cmp::Less, bound);
    const bool h2 = rep.check("||lambda T^k phi + 2||_p^p < (eps/2)^p", n2, Cmp::Less, bound);
    if (!h1 || !h2) {
        rep.verdict = Verdict::HypothesesNotMet;
        rep.notes.push_back(!h1 && !h2 ? "both norm hypotheses fail"
                            : !h1      ? "hypothesis ||phi - 2|| < eps/2 fails"
                                       : "hypothesis ||lambda T^k phi + 2|| < eps/2 fails");
        return rep;
    }

    // Level sets use strict inequalities; the boundary |.| = 1 falls outside.
    const std::size_t d = phi.depth();
    const CylinderUnion c = phi.level_set([&](const Rational& v) { return abs(lambda * v + 2) < 1; }, d);
    const CylinderUnion dset = phi.level_set([&](const Rational& v) { return abs(v - 2) < 1; }, d);
    const CylinderUnion b = intersect(dset, c.translate(k, Direction::Preimage));
    const Rational not_b = 1 - b.measure(ms);
    const Rational pre = b.translate(k, Direction::Preimage).measure(ms);
    const Rational img = b.translate(k, Direction::Image).measure(ms);
    rep.value("mu_C", c.measure(ms));
    rep.value("mu_D", dset.measure(ms));
    rep.value("mu_B", b.measure(ms));
    rep.value("depth", Integer(static_cast<unsigned long>(d)));
    rep.check("mu(X \\ D) < eps/2", Rational(1 - dset.measure(ms)), Cmp::Less, Rational(eps / 2));
    rep.check("mu(X \\ f^-k(C)) < eps/2", Rational(1 - c.translate(k, Direction::Preimage).measure(ms)), Cmp::Less,
              Rational(eps / 2));
    rep.check("mu(X \\ B) < eps", not_b, Cmp::Less, eps);
    rep.check("mu(f^-k(B)) < eps", pre, Cmp::Less, eps);
    rep.check("mu(f^k(B)) < eps", img, Cmp::Less, eps);
    rep.settle_from_checks();
    return rep;
}

}  // namespace odo
