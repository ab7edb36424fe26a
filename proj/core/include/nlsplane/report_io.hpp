#pragma once

#include <iosfwd>
#include <string>

#include "nlsplane/experiments.hpp"
#include "nlsplane/resonance.hpp"

namespace nlsplane {

// Shortest round-trip-safe representation with 17 significant digits,
// independent of the global locale.
std::string format_double(double value);

void write_drift_csv(std::ostream& out, const DriftReport& report);
std::string drift_report_json(const DriftReport& report, int indent = 2);

void write_certificate_csv(std::ostream& out, const RhoScanTable& table);
std::string certificate_json(const RhoScanTable& table, int indent = 2);

}  // namespace nlsplane
