#pragma once

#include <filesystem>
#include <string>

// vendored single-header nlohmann/json
#include <json.hpp>

#include "pap/iet.hpp"
#include "pap/interval_set.hpp"
#include "pap/itm.hpp"
#include "pap/pwi2d.hpp"
#include "pap/stepfn.hpp"

namespace pap {

/// Insertion-ordered JSON keeps emitted reports byte-stable across runs.
using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const IntervalSet& s);
Json to_json(const StepFn& f);
Json to_json(const Iet& f);
Json to_json(const Itm& t);
Json to_json(const Vec2& v);
Json to_json(const ConvexPoly& p);
Json to_json(const RotMap& m);
Json to_json(const PwRotation& f);
Json to_json(const PolyDensity& d);
Json to_json(const PolySet& s);

/// The *_from functions validate shape and report the offending JSON path in
/// BadConfig errors ("map.translations[2]: expected scalar string").
Scalar scalar_from(const Json& j, const std::string& path);
IntervalSet interval_set_from(const Json& j, const std::string& path);
StepFn stepfn_from(const Json& j, const std::string& path);
Iet iet_from(const Json& j, const std::string& path);
Itm itm_from(const Json& j, const std::string& path);
ConvexPoly poly_from(const Json& j, const std::string& path);
RotMap rotmap_from(const Json& j, const std::string& path);
PwRotation pwrotation_from(const Json& j, const std::string& path);
PolyDensity polydensity_from(const Json& j, const std::string& path);

/// Parses a JSON document, converting parse failures to BadConfig with
/// line/column of the failure.
Json parse_json_file(const std::filesystem::path& file);
Json parse_json_text(const std::string& text, const std::string& origin);

/// Fixed-format float rendering (%.17g) used across all emitted artifacts.
std::string float_str(double v);

}  // namespace pap
