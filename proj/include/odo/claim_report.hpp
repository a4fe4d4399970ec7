#pragma once

#include "odo/interval.hpp"
#include "odo/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace odo {

enum class Verdict { Verified, Refuted, Inconclusive, HypothesesNotMet };
std::string_view to_string(Verdict v);

enum class Cmp { Less, LessEq, Equal, GreaterEq, Greater };
std::string_view to_string(Cmp c);
bool compare(const Rational& lhs, Cmp op, const Rational& rhs);

// One exact comparison backing a verdict; re-checkable from the serialized
// endpoints alone.
struct Check {
    std::string what;
    Rational lhs;
    Cmp op;
    Rational rhs;
    bool holds() const { return compare(lhs, op, rhs); }
};

// Structured outcome of a verifier. "verified"/"refuted" only ever come from
// exact rational comparisons or enclosures strictly on one side of a threshold.
struct ClaimReport {
    std::string claim;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::pair<std::string, RatInterval>> enclosures;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    void param(std::string name, std::string value) { params.emplace_back(std::move(name), std::move(value)); }
    void param(std::string name, const char* value) { params.emplace_back(std::move(name), value); }
    void param(std::string name, const Rational& q) { params.emplace_back(std::move(name), to_string(q)); }
    void param(std::string name, const Integer& z) { params.emplace_back(std::move(name), to_string(z)); }
    void value(std::string name, const Rational& q) { values.emplace_back(std::move(name), to_string(q)); }
    void value(std::string name, const Integer& z) { values.emplace_back(std::move(name), to_string(z)); }
    void value(std::string name, std::string text) { values.emplace_back(std::move(name), std::move(text)); }
    void value(std::string name, const char* text) { values.emplace_back(std::move(name), text); }
    void enclosure(std::string name, const RatInterval& iv) { enclosures.emplace_back(std::move(name), iv); }
    bool check(std::string what, const Rational& lhs, Cmp op, const Rational& rhs);
    bool all_checks_hold() const;
    // Verified if every check holds, Refuted otherwise.
    void settle_from_checks();
};

}  // namespace odo
