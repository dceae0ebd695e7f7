#pragma once

// File formats and report serialization: points files, the network JSON
// schema, and deterministic json/csv/table emission of the report types.

#include <threshcap/netcap.hpp>
#include <threshcap/setcap.hpp>

#include <iosfwd>
#include <string>

namespace threshcap {

// "cube:n" yields H^n (1 <= n <= 20); anything else is read as a points
// file: UTF-8 text, one point per line, whitespace-separated coordinates,
// each an integer or "p/q"; "#" starts a comment; blank lines are skipped.
// Points must share one dimension and be pairwise distinct.
PointSet load_point_set(const std::string& source);

// The parser behind load_point_set; `name` labels error messages.
PointSet parse_point_set(std::istream& in, const std::string& name);

// Network JSON schema:
//   { "architecture": [n1, ...],
//     "layers": [ { "units": [ { "weights": ["p/q", ...], "bias": "p/q" } ] } ] }
// The architecture lists the input size first; layer and unit counts must
// match it. Weights and biases are rational strings (bare integers allowed).
LayeredNetwork parse_network_json(const std::string& text);
std::string network_json(const LayeredNetwork& net);
LayeredNetwork load_network(const std::string& path);

enum class ReportFormat { json, csv, table };

// "json" | "csv" | "table" (anything else throws InputError).
ReportFormat parse_format(const std::string& name);

// Deterministic serialization: big integers as decimal strings, rationals
// as "p/q", fixed six-decimal bit values in csv/table, one row per bound
// carrying its statement slug and flags. A nonempty `timestamp` adds a
// generated-at entry; by default payloads carry no timestamps.
std::string emit_report(const CapacityReport& rep, ReportFormat format,
                        const std::string& timestamp = "");
std::string emit_report(const NetworkReport& rep, ReportFormat format,
                        const std::string& timestamp = "");

}  // namespace threshcap
