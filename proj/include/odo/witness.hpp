#pragma once

// Constructive hypercyclicity witnesses: for eps in (0, 1), a set A and a
// time j with mu(A) > 1 - eps and mu(f^j(A)) < eps.

#include "odo/claim_report.hpp"
#include "odo/pattern.hpp"

#include <optional>
#include <stdexcept>

namespace odo {

// Supplies the set B whose forward translates become small.
struct WitnessProvider {
    PatternSet b;
    std::size_t search_budget = 512;  // candidate translates tried before giving up
    // Try translates whose low part carries into position N + 1 first.
    bool prefer_carry = false;
};

struct ProviderFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CertificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WitnessPair {
    Rational eps;
    std::size_t n_prefix = 0;           // N
    std::vector<unsigned> b_prefix;     // b_1..b_N
    Rational delta;
    Integer k, k1, k2;
    unsigned carry = 0;
    Integer j;
    // A = a_base minus a_excluded (when present).
    PatternSet a_base;
    std::optional<PatternSet> a_excluded;
    RatInterval mu_a;
    RatInterval mu_image;  // mu(f^j(A))
    ClaimReport report;
};

// Throws std::invalid_argument unless 0 < eps < 1, ProviderFailure when no
// translate of B is small enough within the budget, and CertificationFailure
// if the recomputed measures miss either bound.
WitnessPair hc_witness(const WitnessProvider& provider, const Rational& eps,
                       const Rational& tol = default_tolerance(), std::size_t cap = kDefaultDepthCap);

// mu(A) and mu(f^j(A)) recomputed from the pair's sets alone.
std::pair<RatInterval, RatInterval> recertify(const WitnessPair& w, const Rational& tol = default_tolerance());

}  // namespace odo
