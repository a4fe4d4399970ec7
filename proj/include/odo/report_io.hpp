#pragma once

// Newline-delimited JSON records and CSV tables. Every rational is written
// exactly as "num/den".

#include "odo/claim_report.hpp"
#include "odo/example_d.hpp"
#include "odo/operator_lab.hpp"
#include "odo/witness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace odo {

nlohmann::json interval_json(const RatInterval& iv);
nlohmann::json report_json(const ClaimReport& rep);
nlohmann::json witness_json(const WitnessPair& w);
nlohmann::json pattern_json(const PatternSet& s);
nlohmann::json orbit_json(const OrbitSummary& s);

// One compact line per record; keys come out sorted.
void write_record(std::ostream& os, const nlohmann::json& record);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void write_orbit_csv(std::ostream& os, const OrbitSummary& s);

}  // namespace odo
