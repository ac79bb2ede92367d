#pragma once

#include <iosfwd>

#include "json.hpp"

#include "fixlab/classify.hpp"
#include "fixlab/iterate.hpp"

namespace fixlab {

// All real values serialize through nlohmann's shortest round-trip formatting,
// so parsing a document back yields bit-identical doubles and re-running a
// fixed seed yields byte-identical files.

nlohmann::ordered_json to_json(const Point& point);
nlohmann::ordered_json to_json(const ContractionCertificate& certificate);
nlohmann::ordered_json to_json(const IterationReport& report);

// One JSON object per line: {"n", "step_distance", "ratio"?, "gap"?, "point"?}
// with ratio/gap omitted where undefined and point present on stored indices.
void write_trace_jsonl(std::ostream& out, const OrbitTrace& trace);

// Array of certificate documents.
void write_certificates_json(std::ostream& out,
                             std::span<const ContractionCertificate> certs);

}  // namespace fixlab
