#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "jnormals/curve.hpp"
#include "jnormals/discrete_normal.hpp"
#include "jnormals/intgeo.hpp"
#include "jnormals/measure.hpp"
#include "jnormals/polyline.hpp"
#include "jnormals/relaxation.hpp"
#include "jnormals/taylor.hpp"

namespace jnormals {

// Polyline CSV: header line "# dim=<d> closed=<0|1>", then one vertex per
// row, coordinates as decimal literals.
Polygonal read_polyline_csv(const std::string& path);
void write_polyline_csv(const std::string& path, const Polygonal& p);
Polygonal polyline_from_csv_text(const std::string& text);
std::string polyline_to_csv_text(const Polygonal& p);

// Curve spec JSON: {"curve": <name>, "params": {...}, "domain": [a, b]}.
// The optional domain restricts the builtin's native domain (open result).
CurvePtr curve_from_json(const nlohmann::json& spec);
CurvePtr curve_from_json_file(const std::string& path);

nlohmann::json to_json(const GeodesicPolygonStats& s);
nlohmann::json to_json(const DiscreteNormal& dn);
nlohmann::json to_json(const InequalityReport& rep);
nlohmann::json to_json(const RelaxationRun& run);
nlohmann::json to_json(const F1TcReport& rep);
nlohmann::json to_json(const IntGeoReport& rep);
nlohmann::json to_json(const TarReport& rep);
nlohmann::json to_json(const OrderFitReport& rep);
nlohmann::json to_json(const MeasureReport& rep);
nlohmann::json to_json(const MeasureBins& bins);
nlohmann::json to_json(const EmonCounterexample& emon);
nlohmann::json to_json(const SmoothComparison& cmp);
nlohmann::json to_json(const NonrectifiableReport& rep);

void write_text_file(const std::string& path, const std::string& text);
std::string format_double(double x);  // 17 significant digits

}  // namespace jnormals
