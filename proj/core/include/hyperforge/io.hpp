#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperforge/cauchy_construct.hpp"
#include "hyperforge/coord_construct.hpp"
#include "hyperforge/criteria.hpp"
#include "hyperforge/verify.hpp"

namespace hyperforge {

using json = nlohmann::json;

// Scalars are written as [re, im] when both parts are comfortably inside the
// double range, otherwise as {"log_mag", "phase"} with optional "_lo" parts
// carrying the remaining long double bits.
json to_json(const WideComplex& z);
WideComplex wide_complex_from_json(const json& j);

// {"coeffs": [[index, re, im] | {"index", "log_mag", "phase"}, ...], "horizon"?}
json to_json(const FiniteSeq& x);
FiniteSeq finite_seq_from_json(const json& j);

json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

// "const:<c>" / "maclane" as a string; tables inline as {"table": [[re, im], ...]}.
json to_json(const Weight& w);
Weight weight_from_json(const json& j);

json to_json(const PkWitness& w);
PkWitness pk_witness_from_json(const json& j);
json to_json(const MixingResult& m);
json to_json(const PropertyAWitness& w);
json to_json(const PropertyBWitness& w);

json to_json(const CoordBundle& b);
CoordBundle coord_bundle_from_json(const json& j);
json to_json(const CauchyBundle& b);
CauchyBundle cauchy_bundle_from_json(const json& j);
// "coordinatewise" or "cauchy"
std::string bundle_kind(const json& j);

// FNV-1a (64 bit) of the compact serialized bundle, as 16 hex digits.
std::string bundle_id(const CoordBundle& b);
std::string bundle_id(const CauchyBundle& b);

json to_json(const OrbitReport& r);
OrbitReport orbit_report_from_json(const json& j);
json to_json(const ZeroProductReport& r);
json to_json(const GenerationReport& r);
json to_json(const ExpansionComparison& e);

// Header "round,distance,bound,ratio" and one line per row.
std::string report_csv(const OrbitReport& r);

// Accepts a JSON list of sequences or {"targets": [...]}.
std::vector<FiniteSeq> targets_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hyperforge
