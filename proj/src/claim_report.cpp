#include "odo/claim_report.hpp"

#include <algorithm>

namespace odo {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::HypothesesNotMet: return "hypotheses-not-met";
    }
    return "inconclusive";
}

std::string_view to_string(Cmp c) {
    switch (c) {
        case Cmp::Less: return "<";
        case Cmp::LessEq: return "<=";
        case Cmp::Equal: return "==";
        case Cmp::GreaterEq: return ">=";
        case Cmp::Greater: return ">";
    }
    return "?";
}

bool compare(const Rational& lhs, Cmp op, const Rational& rhs) {
    switch (op) {
        case Cmp::Less: return lhs < rhs;
        case Cmp::LessEq: return lhs <= rhs;
        case Cmp::Equal: return lhs == rhs;
        case Cmp::GreaterEq: return lhs >= rhs;
        case Cmp::Greater: return lhs > rhs;
    }
    return false;
}

bool ClaimReport::check(std::string what, const Rational& lhs, Cmp op, const Rational& rhs) {
    checks.push_back(Check{std::move(what), lhs, op, rhs});
    return checks.back().holds();
}

bool ClaimReport::all_checks_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds(); });
}

void ClaimReport::settle_from_checks() { verdict = all_checks_hold() ? Verdict::Verified : Verdict::Refuted; }

}  // namespace odo
