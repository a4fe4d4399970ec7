#pragma once

#include "odo/claim_report.hpp"

#include <stdexcept>
#include <string>

namespace odo::test {

inline std::string value_of(const ClaimReport& rep, const std::string& name) {
    for (const auto& [k, v] : rep.values)
        if (k == name) return v;
    throw std::out_of_range("no value " + name);
}

inline RatInterval enclosure_of(const ClaimReport& rep, const std::string& name) {
    for (const auto& [k, v] : rep.enclosures)
        if (k == name) return v;
    throw std::out_of_range("no enclosure " + name);
}

}  // namespace odo::test
