#include "pap/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pap {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  raise(Errc::BadConfig, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "." + key, "missing field");
  return *it;
}

std::string scalar_string(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (!j.is_string()) bad(path, "expected scalar string");
  return j.get<std::string>();
}

std::vector<Scalar> scalar_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected array of scalar strings");
  std::vector<Scalar> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(scalar_from(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

long common_field_d(const std::vector<Scalar>& xs) {
  long d = 0;
  for (const auto& x : xs) {
    if (x.field_d() != 0) d = x.field_d();
  }
  return d;
}

}  // namespace

std::string float_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& iv : s.parts()) arr.push_back(Json::array({iv.a.str(), iv.b.str()}));
  return arr;
}

Json to_json(const StepFn& f) {
  Json j;
  Json cuts = Json::array(), vals = Json::array();
  for (const auto& c : f.breakpoints()) cuts.push_back(c.str());
  for (const auto& v : f.values()) vals.push_back(v.str());
  j["breakpoints"] = std::move(cuts);
  j["values"] = std::move(vals);
  return j;
}

namespace {

Json piecewise_to_json(const std::vector<Scalar>& cuts, const std::vector<Scalar>& shifts) {
  Json j;
  Json jc = Json::array(), js = Json::array();
  long d = common_field_d(cuts);
  if (d == 0) d = common_field_d(shifts);
  for (const auto& c : cuts) jc.push_back(c.str());
  for (const auto& s : shifts) js.push_back(s.str());
  j["breakpoints"] = std::move(jc);
  j["translations"] = std::move(js);
  j["field_d"] = d == 0 ? Json(nullptr) : Json(d);
  return j;
}

}  // namespace

Json to_json(const Iet& f) { return piecewise_to_json(f.breakpoints(), f.translations()); }
Json to_json(const Itm& t) { return piecewise_to_json(t.breakpoints(), t.translations()); }

Json to_json(const Vec2& v) {
  std::ostringstream ox, oy;
  ox << v.x;
  oy << v.y;
  return Json::array({ox.str(), oy.str()});
}

Json to_json(const ConvexPoly& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  Json j;
  j["vertices"] = std::move(verts);
  return j;
}

Json to_json(const RotMap& m) {
  std::ostringstream oc, os;
  oc << m.cos_val();
  os << m.sin_val();
  Json j;
  j["cos"] = oc.str();
  j["sin"] = os.str();
  j["offset"] = to_json(m.offset());
  return j;
}

Json to_json(const PwRotation& f) {
  Json atoms = Json::array(), maps = Json::array();
  for (const auto& a : f.atoms()) atoms.push_back(to_json(a));
  for (const auto& m : f.maps()) maps.push_back(to_json(m));
  Json j;
  j["atoms"] = std::move(atoms);
  j["maps"] = std::move(maps);
  j["ambient"] = to_json(f.ambient());
  return j;
}

Json to_json(const PolyDensity& d) {
  Json cells = Json::array();
  for (const auto& c : d.cells()) {
    Json jc;
    jc["poly"] = to_json(c.poly);
    jc["value"] = c.value.str();
    cells.push_back(std::move(jc));
  }
  Json j;
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const PolySet& s) {
  Json arr = Json::array();
  for (const auto& p : s) arr.push_back(to_json(p));
  return arr;
}

Scalar scalar_from(const Json& j, const std::string& path) {
  try {
    return Scalar::parse(scalar_string(j, path));
  } catch (const Error& e) {
    if (e.code() == Errc::BadConfig) throw;
    bad(path, e.what());
  }
}

IntervalSet interval_set_from(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected array of [a, b) pairs");
  std::vector<Interval> parts;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) bad(p, "expected a pair of scalar strings");
    parts.push_back({scalar_from(j[i][0], p + "[0]"), scalar_from(j[i][1], p + "[1]")});
  }
  return IntervalSet::from_intervals(std::move(parts));
}

StepFn stepfn_from(const Json& j, const std::string& path) {
  auto cuts = scalar_list(field(j, "breakpoints", path), path + ".breakpoints");
  auto vals = scalar_list(field(j, "values", path), path + ".values");
  try {
    return StepFn(std::move(cuts), std::move(vals));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

namespace {

std::pair<std::vector<Scalar>, std::vector<Scalar>> piecewise_from(const Json& j,
                                                                   const std::string& path) {
  auto cuts = scalar_list(field(j, "breakpoints", path), path + ".breakpoints");
  auto shifts = scalar_list(field(j, "translations", path), path + ".translations");
  if (auto it = j.find("field_d"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) bad(path + ".field_d", "expected integer or null");
    long d = it->get<long>();
    for (const auto& x : cuts) {
      if (x.field_d() != 0 && x.field_d() != d) bad(path + ".field_d", "scalars use a different field");
    }
    for (const auto& x : shifts) {
      if (x.field_d() != 0 && x.field_d() != d) bad(path + ".field_d", "scalars use a different field");
    }
  }
  return {std::move(cuts), std::move(shifts)};
}

}  // namespace

Iet iet_from(const Json& j, const std::string& path) {
  auto [cuts, shifts] = piecewise_from(j, path);
  try {
    return Iet(std::move(cuts), std::move(shifts));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Itm itm_from(const Json& j, const std::string& path) {
  auto [cuts, shifts] = piecewise_from(j, path);
  try {
    return Itm(std::move(cuts), std::move(shifts));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

namespace {

mpq_class rational_from(const Json& j, const std::string& path) {
  Scalar s = scalar_from(j, path);
  if (!s.is_rational()) bad(path, "expected a rational (no sqrt part)");
  return s.rat_part();
}

Vec2 vec_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [x, y] pair of rational strings");
  return {rational_from(j[0], path + "[0]"), rational_from(j[1], path + "[1]")};
}

}  // namespace

ConvexPoly poly_from(const Json& j, const std::string& path) {
  const Json& verts = field(j, "vertices", path);
  if (!verts.is_array()) bad(path + ".vertices", "expected array");
  std::vector<Vec2> vs;
  for (size_t i = 0; i < verts.size(); ++i) {
    vs.push_back(vec_from(verts[i], path + ".vertices[" + std::to_string(i) + "]"));
  }
  try {
    return ConvexPoly(std::move(vs));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

RotMap rotmap_from(const Json& j, const std::string& path) {
  try {
    return RotMap(rational_from(field(j, "cos", path), path + ".cos"),
                  rational_from(field(j, "sin", path), path + ".sin"),
                  vec_from(field(j, "offset", path), path + ".offset"));
  } catch (const Error& e) {
    if (e.code() == Errc::BadConfig) throw;
    bad(path, e.what());
  }
}

PwRotation pwrotation_from(const Json& j, const std::string& path) {
  const Json& atoms = field(j, "atoms", path);
  const Json& maps = field(j, "maps", path);
  if (!atoms.is_array() || !maps.is_array()) bad(path, "atoms and maps must be arrays");
  std::vector<ConvexPoly> as;
  std::vector<RotMap> ms;
  for (size_t i = 0; i < atoms.size(); ++i) {
    as.push_back(poly_from(atoms[i], path + ".atoms[" + std::to_string(i) + "]"));
  }
  for (size_t i = 0; i < maps.size(); ++i) {
    ms.push_back(rotmap_from(maps[i], path + ".maps[" + std::to_string(i) + "]"));
  }
  ConvexPoly ambient = poly_from(field(j, "ambient", path), path + ".ambient");
  try {
    return PwRotation(std::move(as), std::move(ms), std::move(ambient));
  } catch (const Error& e) {
    if (e.code() == Errc::BadConfig) throw;
    bad(path, e.what());
  }
}

PolyDensity polydensity_from(const Json& j, const std::string& path) {
  const Json& cells = field(j, "cells", path);
  if (!cells.is_array()) bad(path + ".cells", "expected array");
  std::vector<PolyDensity::Cell> cs;
  for (size_t i = 0; i < cells.size(); ++i) {
    std::string p = path + ".cells[" + std::to_string(i) + "]";
    cs.push_back({poly_from(field(cells[i], "poly", p), p + ".poly"),
                  scalar_from(field(cells[i], "value", p), p + ".value")});
  }
  try {
    return PolyDensity(std::move(cs));
  } catch (const Error& e) {
    if (e.code() == Errc::BadConfig) throw;
    bad(path, e.what());
  }
}

namespace {

Json parse_with_position(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset to line/column for a usable message.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    raise(Errc::BadConfig, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                               e.what());
  }
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  return parse_with_position(text, origin);
}

Json parse_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) raise(Errc::IoError, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_with_position(buf.str(), file.string());
}

}  // namespace pap
