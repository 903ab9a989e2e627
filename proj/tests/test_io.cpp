#include "holdcert/families.hpp"
#include "holdcert/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace holdcert;
namespace fs = std::filesystem;

TEST_CASE("numbers are rounded to 12 significant digits") {
  CHECK(io::round_sig(1.0 / 3.0) == 0.333333333333);
  CHECK(io::round_sig(2.0) == 2.0);
  CHECK(io::round_sig(0.0) == 0.0);
  CHECK(io::to_json(Vec3(1.0 / 3.0, 0, 0)).dump() == "[0.333333333333,0.0,0.0]");
}

TEST_CASE("body and circle round trip") {
  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  const Polytope3 k = io::polytope_from_json(io::to_json(f.body));
  CHECK(k.vertices().size() == 6);
  CHECK(width3(k).width == doctest::Approx(width3(f.body).width).epsilon(1e-10));
  const Circle3 c = io::circle_from_json(io::to_json(*f.circle));
  CHECK(c.diameter == doctest::Approx(f.circle->diameter).epsilon(1e-11));
  CHECK((c.center - f.circle->center).norm() < 1e-11);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(io::polytope_from_json(io::Json{{"points", 1}}), GeometryError);
  CHECK_THROWS_AS(io::circle_from_json(io::Json{{"center", {0, 0, 0}}}), GeometryError);
  CHECK_THROWS_AS(io::circle_from_json(io::Json{{"center", {0, 0, 0}}, {"diameter", -1.0}, {"normal", {0, 0, 1}}}),
                  GeometryError);
  CHECK_THROWS_AS(io::read_json("/nonexistent/file.json"), GeometryError);
}

TEST_CASE("files round trip through disk") {
  const fs::path dir = fs::temp_directory_path() / "holdcert_io_test";
  const FamilyInstance f = flat_tetrahedron(0.2);
  io::write_json(dir / "body.json", io::to_json(f.body));
  CHECK(io::polytope_from_json(io::read_json(dir / "body.json")).vertices().size() == 4);
  fs::remove_all(dir);
}

TEST_CASE("serialization is deterministic") {
  const FamilyInstance f = flat_tetrahedron(0.2);
  CertifyOptions o;
  o.escape.budget = 2000;
  const std::string a = io::to_json(certify_holding(f.body, *f.circle, o)).dump();
  const std::string b = io::to_json(certify_holding(f.body, *f.circle, o)).dump();
  CHECK(a == b);
}

TEST_CASE("scene and figure writers") {
  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  const std::string obj = io::obj_scene(f.body, {*f.circle});
  std::istringstream in(obj);
  std::string line;
  int v = 0;
  int faces = 0;
  int lines = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++faces;
    if (line.rfind("l ", 0) == 0) ++lines;
  }
  CHECK(v == 6 + 128);
  CHECK(faces == static_cast<int>(f.body.faces().size()));
  CHECK(lines == 1);

  const IcebergProfile p = iceberg_profile(f.body, {Vec3::UnitZ(), f.circle->center.z()}, ProfileOptions{90, false});
  const std::string csv = io::profile_csv(p);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 91);
  const std::string svg = io::profile_svg(p);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(io::polygons_svg({{Polygon2::hull(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}}), "red", "t"}}).find("<polygon") != std::string::npos);
  CHECK(io::to_json(p, true)["profile"].size() == 90);
}
