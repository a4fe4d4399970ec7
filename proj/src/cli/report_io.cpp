#include "odo/report_io.hpp"

#include <ostream>

namespace odo {

using nlohmann::json;

json interval_json(const RatInterval& iv) { return {{"lo", to_string(iv.lo())}, {"hi", to_string(iv.hi())}}; }

json report_json(const ClaimReport& rep) {
    json j;
    j["claim"] = rep.claim;
    j["verdict"] = std::string(to_string(rep.verdict));
    j["params"] = json::object();
    for (const auto& [k, v] : rep.params) j["params"][k] = v;
    j["values"] = json::object();
    for (const auto& [k, v] : rep.values) j["values"][k] = v;
    j["enclosures"] = json::object();
    for (const auto& [k, iv] : rep.enclosures) j["enclosures"][k] = interval_json(iv);
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"what", c.what},
                               {"lhs", to_string(c.lhs)},
                               {"op", std::string(to_string(c.op))},
                               {"rhs", to_string(c.rhs)},
                               {"holds", c.holds()}});
    j["notes"] = rep.notes;
    return j;
}

json pattern_json(const PatternSet& s) {
    json j;
    j["horizon"] = s.horizon();
    j["constraints"] = json::object();
    for (const auto& [i, set] : s.constraints()) j["constraints"][std::to_string(i)] = set;
    if (const auto* z = std::get_if<ZeroOffMarkersTail>(&s.rule()))
        j["eventual_rule"] = "zero-off-markers:" + std::to_string(z->marker_base);
    else
        j["eventual_rule"] = "free";
    return j;
}

json witness_json(const WitnessPair& w) {
    json j = report_json(w.report);
    j["A"] = {{"base", pattern_json(w.a_base)}};
    if (w.a_excluded) j["A"]["excluded"] = pattern_json(*w.a_excluded);
    j["b_prefix"] = w.b_prefix;
    return j;
}

json orbit_json(const OrbitSummary& s) {
    json j;
    j["claim"] = "orbit";
    j["values"] = json::array();
    for (const auto& v : s.values) j["values"].push_back(to_string(v));
    j["min"] = to_string(s.min);
    j["max"] = to_string(s.max);
    j["argmin"] = s.argmin;
    j["argmax"] = s.argmax;
    if (s.threshold) {
        j["threshold"] = to_string(*s.threshold);
        j["count_below"] = s.count_below;
        j["density_below"] = to_string(s.density_below);
    }
    return j;
}

void write_record(std::ostream& os, const json& record) { os << record.dump() << '\n'; }

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "n,lo,hi,cap_reached,forced_coordinate\n";
    for (const auto& r : rows) {
        os << to_string(r.n) << ',' << to_string(r.enclosure.lo()) << ',' << to_string(r.enclosure.hi()) << ','
           << (r.cap_reached ? "true" : "false") << ',';
        if (r.forced) os << *r.forced;
        os << '\n';
    }
}

void write_orbit_csv(std::ostream& os, const OrbitSummary& s) {
    os << "n,norm_pow\n";
    for (std::size_t n = 1; n <= s.values.size(); ++n) os << n << ',' << to_string(s.values[n - 1]) << '\n';
}

}  // namespace odo
