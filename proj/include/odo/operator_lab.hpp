#pragma once

// The composition operator T(phi) = phi o f on simple functions: exact
// orbits, L^p norms, periodic points, recurrence, and the supercyclicity
// set checker.

#include "odo/claim_report.hpp"
#include "odo/simple_function.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace odo {

// T^n phi = phi o f^n: chi_C maps to chi_{f^-n(C)}.
SimpleFunction apply_T(const SimpleFunction& phi, const Integer& n);

// ||phi||_p^p, exact for integer p >= 1.
Rational lp_norm_pow(const SimpleFunction& phi, const MeasureSeq& ms, unsigned p);
// Enclosure of ||phi||_p^p for rational p >= 1, width <= tol.
RatInterval lp_norm_pow(const SimpleFunction& phi, const MeasureSeq& ms, const Rational& p, const Rational& tol);

struct OrbitSummary {
    std::vector<Rational> values;  // values[n-1] = ||T^n phi||_p^p
    Rational min, max;
    std::size_t argmin = 0, argmax = 0;  // first index attaining the extremum
    std::optional<Rational> threshold;
    std::size_t count_below = 0;  // entries strictly below the threshold
    Rational density_below;       // count_below / N
};

// Exploratory scan of ||T^n phi||_p^p for 1 <= n <= steps. Evidence only.
OrbitSummary orbit_norms(const SimpleFunction& phi, const MeasureSeq& ms, unsigned p, std::size_t steps,
                         std::optional<Rational> threshold = std::nullopt, unsigned jobs = 1);

struct PeriodReport {
    Integer beta;       // beta_D for the canonical depth D
    bool verified;      // apply_T(phi, beta) == phi
    Integer minimal;    // least period, a divisor of beta
};
PeriodReport periodic_period(const SimpleFunction& phi);

struct RecurrenceWitness {
    Integer n;
    Rational overlap;  // mu(C ∩ f^-n(C))
};
// n = beta_D returns every point of C to C.
RecurrenceWitness conservativity_witness(const Cylinder& c, const MeasureSeq& ms);

// T^{beta_D} phi == phi for `count` seeded random simple functions with depths
// drawn from 1..max_depth and integer coefficients in [-3, 3].
ClaimReport periodicity_suite(const BaseSeq& base, std::size_t count, std::size_t max_depth, std::uint64_t seed);

// Report form of conservativity_witness.
ClaimReport conservativity_report(const Cylinder& c, const MeasureSeq& ms);

// Builds C = {|lambda phi + 2| < 1}, D = {|phi - 2| < 1}, B = D ∩ f^-k(C)
// and checks the three measure conclusions exactly. Integer p only.
ClaimReport sc_gap_checker(const SimpleFunction& phi, const Rational& lambda, const Integer& k,
                           const Rational& eps, unsigned p, const MeasureSeq& ms);

}  // namespace odo
