#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "amalg/amalg.hpp"
#include "amalg/bases.hpp"
#include "amalg/graphlap.hpp"
#include "amalg/heat.hpp"
#include "amalg/spooky.hpp"

namespace amalg {

inline constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(std::string_view bytes);

/// Shortest round-trip-safe rendering at 17 significant digits.
std::string format_double(double v);

nlohmann::json to_json(const BasisManifest& m);
nlohmann::json to_json(const DomainPoint& p);

nlohmann::json to_json(const Sandwich& s);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const SpookyScan& s);
nlohmann::json to_json(const IndependenceReport& r);
nlohmann::json to_json(const CorrelationProfile& p);
nlohmann::json to_json(const ZonalFit& f);
nlohmann::json to_json(const GraphSpec& g);

/// CSV body for a field: header row of coordinate names plus `value`, then
/// one row per grid point. No trailing manifest line.
std::string field_csv_body(const AmalgField& field);

/// Full CSV document: `# <json header>` line followed by the body.
std::string field_csv(const AmalgField& field, const nlohmann::json& manifest);

/// Serialises JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace amalg
