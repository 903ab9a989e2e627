#pragma once

#include "holdcert/families.hpp"
#include "holdcert/holding.hpp"
#include "holdcert/projection.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace holdcert::io {

using Json = nlohmann::ordered_json;

// Rounds to `digits` significant digits so reports are stable across platforms.
double round_sig(double x, int digits = 12);

Json to_json(const Vec3& v);
Json to_json(const Circle3& c);
Json to_json(const Polytope3& k);
Json to_json(const WidthResult& w);
Json to_json(const CylinderResult& c);
Json to_json(const BlockCertificate& b);
Json to_json(const EscapeResult& e);
Json to_json(const ChainCertificate& c);
Json to_json(const ExtremalityDiagnostics& e);
Json to_json(const HoldingReport& r);
Json to_json(const IcebergProfile& p, bool with_samples = false);
Json to_json(const FamilyInstance& f);
Json to_json(const FamilyInstanceND& f);

// {"vertices": [[x,y,z], ...]}; faces are recomputed.
Polytope3 polytope_from_json(const Json& j, const Tolerances& tol = {});
// {"center": [x,y,z], "diameter": d, "normal": [nx,ny,nz]}
Circle3 circle_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

// Wavefront OBJ of the body, plus the circle as a closed polyline.
std::string obj_scene(const Polytope3& k, const std::vector<Circle3>& circles = {}, int circle_segments = 128);

std::string profile_csv(const IcebergProfile& p);
std::string profile_svg(const IcebergProfile& p);

struct SvgPolygon {
  Polygon2 polygon;
  std::string color;
  std::string label;
};

std::string polygons_svg(const std::vector<SvgPolygon>& polygons, const std::vector<Circle2>& circles = {});

}  // namespace holdcert::io
