#include "holdcert/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace holdcert::io {

namespace {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig(x);
}

Json vec2(const Vec2& v) { return Json::array({num(v.x()), num(v.y())}); }

Json polygon(const Polygon2& p) {
  Json out = Json::array();
  for (const Vec2& v : p.vertices()) out.push_back(vec2(v));
  return out;
}

Vec3 read_vec3(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw GeometryError(ErrorKind::InvalidInput, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  return std::stod(fmt::format("{:.{}g}", x, digits));
}

Json to_json(const Vec3& v) { return Json::array({num(v.x()), num(v.y()), num(v.z())}); }

Json to_json(const Circle3& c) {
  return Json{{"center", to_json(c.center)}, {"diameter", num(c.diameter)}, {"normal", to_json(c.normal)}};
}

Json to_json(const Polytope3& k) {
  Json verts = Json::array();
  for (const Vec3& v : k.vertices()) verts.push_back(to_json(v));
  Json faces = Json::array();
  for (const Face& f : k.faces()) faces.push_back(f.vertices);
  return Json{{"vertices", verts}, {"faces", faces}};
}

Json to_json(const WidthResult& w) {
  return Json{{"width", num(w.width)},
              {"direction", to_json(w.direction)},
              {"feature", w.feature == WidthFeature::FaceVertex ? "face-vertex" : "edge-edge"}};
}

Json to_json(const CylinderResult& c) {
  return Json{{"diameter", num(c.diameter)}, {"axis_point", to_json(c.axis_point)}, {"axis_direction", to_json(c.axis_direction)}};
}

Json to_json(const BlockCertificate& b) {
  return Json{{"blocked_above", b.blocked_above},
              {"blocked_below", b.blocked_below},
              {"max_slice_diameter_above", num(b.max_diameter_above)},
              {"max_slice_diameter_below", num(b.max_diameter_below)},
              {"height_above", num(b.height_above)},
              {"height_below", num(b.height_below)}};
}

Json to_json(const EscapeResult& e) {
  Json out{{"outcome", e.found() ? "Found" : "NotFoundWithinBudget"},
           {"poses_used", e.poses_used},
           {"tree_size", e.tree_size},
           {"step", num(e.step)},
           {"escape_radius", num(e.escape_radius)}};
  if (e.path) {
    Json poses = Json::array();
    for (std::size_t i = 0; i < e.path->poses.size(); ++i) {
      const Pose& p = e.path->poses[i];
      poses.push_back(Json{{"center", to_json(p.center)},
                           {"normal", to_json(p.normal)},
                           {"collision_free", static_cast<bool>(e.path->collision_free[i])}});
    }
    out["path"] = poses;
  }
  return out;
}

Json to_json(const ChainCertificate& c) {
  Json contacts = Json::array();
  for (const Vec3& a : c.contacts) contacts.push_back(to_json(a));
  Json halfplanes = Json::array();
  for (const Vec2& n : c.halfplane_normals) {
    halfplanes.push_back(Json{{"normal", vec2(n)}, {"offset", num(0.5 * c.diameter)}});
  }
  return Json{
      {"frame", {{"origin", to_json(c.frame.origin)}, {"e1", to_json(c.frame.e1)}, {"e2", to_json(c.frame.e2)}, {"normal", to_json(c.frame.normal)}}},
      {"slice_height", num(c.slice_height)},
      {"slice_center", to_json(c.slice_center)},
      {"slice_diameter", num(c.slice_diameter)},
      {"slice_polygon", polygon(c.slice_polygon)},
      {"axis_direction", to_json(c.axis_direction)},
      {"homothety_ratio", num(c.homothety_ratio)},
      {"contacts", contacts},
      {"halfplanes", halfplanes},
      {"strip", c.strip},
      {"section", polygon(c.section)},
      {"values",
       {{"w", num(c.width)},
        {"min_wh_union", num(c.min_wh_union)},
        {"min_wh_lower", num(c.min_wh_lower)},
        {"min_wh_section_projection", num(c.min_wh_section_projection)},
        {"section_width", num(c.section_width)},
        {"section_inradius", num(c.section_inradius)},
        {"three_halves_d", num(c.three_halves_d)},
        {"contact_residual", num(c.contact_residual)}}},
      {"checks",
       {{"w <= min wh(lower)", c.width_le_lower},
        {"min wh(lower) < min wh(I)", c.lower_lt_section},
        {"min wh(I) = w2(I n H)", c.projection_eq_section},
        {"w2(I n H) <= 3d/2", c.section_le_bound}}},
      {"all_hold", c.all_hold()}};
}

Json to_json(const ExtremalityDiagnostics& e) {
  return Json{{"hausdorff_normalized", num(e.hausdorff)},
              {"cluster_distance", num(e.cluster_distance)},
              {"extremality_gap", num(e.gap)},
              {"triangle", polygon(e.fit.triangle)}};
}

Json to_json(const HoldingReport& r) {
  Json out{{"non_penetration", r.non_penetration},
           {"blocked_above", r.blocked_above},
           {"blocked_below", r.blocked_below},
           {"blocking", to_json(r.blocking)},
           {"edge_lower_bound", num(r.edge_lower_bound)},
           {"escape", r.escape ? to_json(*r.escape) : Json(nullptr)},
           {"chain", r.chain ? to_json(*r.chain) : Json(nullptr)},
           {"verdict", to_string(r.verdict)}};
  return out;
}

Json to_json(const IcebergProfile& p, bool with_samples) {
  Json out{{"orientation", to_string(p.orientation)},
           {"margin", num(p.margin)},
           {"margin_theta", num(p.margin_theta)},
           {"flipped_margin", num(p.flipped_margin)},
           {"flipped_theta", num(p.flipped_theta)},
           {"samples", p.thetas.size()}};
  if (with_samples) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < p.thetas.size(); ++i) {
      rows.push_back(Json::array({num(p.thetas[i]), num(p.wh_upper[i]), num(p.wh_lower[i])}));
    }
    out["profile"] = rows;
  }
  return out;
}

Json to_json(const FamilyInstance& f) {
  Json params = Json::object();
  for (const auto& [k, v] : f.params) params[k] = num(v);
  Json pred = Json::object();
  for (const auto& [k, p] : f.predicted) {
    Json value = Json::array();
    for (double x : p.value) value.push_back(num(x));
    pred[k] = Json{{"value", p.value.size() == 1 ? value[0] : value}, {"formula", p.formula}};
  }
  Json out{{"family", f.family}, {"params", params}, {"predicted", pred}};
  if (f.circle) out["circle"] = to_json(*f.circle);
  return out;
}

Json to_json(const FamilyInstanceND& f) {
  Json params = Json::object();
  for (const auto& [k, v] : f.params) params[k] = num(v);
  Json verts = Json::array();
  for (const auto& v : f.body.vertices) {
    Json row = Json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(num(v[i]));
    verts.push_back(row);
  }
  Json pred = Json::object();
  for (const auto& [k, p] : f.predicted) pred[k] = Json{{"value", num(p.scalar())}, {"formula", p.formula}};
  return Json{{"family", f.family}, {"params", params}, {"dimension", f.body.dimension}, {"vertices", verts}, {"predicted", pred}};
}

Polytope3 polytope_from_json(const Json& j, const Tolerances& tol) {
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw GeometryError(ErrorKind::InvalidInput, "body JSON needs a \"vertices\" array");
  }
  std::vector<Vec3> pts;
  for (const auto& v : j["vertices"]) pts.push_back(read_vec3(v));
  return build_hull(pts, tol);
}

Circle3 circle_from_json(const Json& j) {
  for (const char* key : {"center", "diameter", "normal"}) {
    if (!j.contains(key)) throw GeometryError(ErrorKind::InvalidInput, fmt::format("circle JSON needs \"{}\"", key));
  }
  Circle3 c{read_vec3(j["center"]), j["diameter"].get<double>(), read_vec3(j["normal"])};
  if (!(c.diameter > 0.0)) throw GeometryError(ErrorKind::InvalidInput, "circle diameter must be positive");
  if (c.normal.norm() < 1e-12) throw GeometryError(ErrorKind::InvalidInput, "circle normal must be nonzero");
  c.normal.normalize();
  return c;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorKind::InvalidInput, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw GeometryError(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string obj_scene(const Polytope3& k, const std::vector<Circle3>& circles, int circle_segments) {
  std::ostringstream out;
  out << "o body\n";
  for (const Vec3& v : k.vertices()) out << fmt::format("v {:.12g} {:.12g} {:.12g}\n", v.x(), v.y(), v.z());
  for (const Face& f : k.faces()) {
    out << "f";
    for (int i : f.vertices) out << ' ' << i + 1;
    out << '\n';
  }
  std::size_t base = k.vertices().size();
  for (std::size_t c = 0; c < circles.size(); ++c) {
    out << "o circle" << c << '\n';
    for (int i = 0; i < circle_segments; ++i) {
      const Vec3 p = circles[c].point(2.0 * std::numbers::pi * i / circle_segments);
      out << fmt::format("v {:.12g} {:.12g} {:.12g}\n", p.x(), p.y(), p.z());
    }
    out << 'l';
    for (int i = 0; i <= circle_segments; ++i) out << ' ' << base + 1 + (i % circle_segments);
    out << '\n';
    base += circle_segments;
  }
  return out.str();
}

std::string profile_csv(const IcebergProfile& p) {
  std::ostringstream out;
  out << "theta,wh_upper,wh_lower,difference\n";
  for (std::size_t i = 0; i < p.thetas.size(); ++i) {
    out << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g}\n", p.thetas[i], p.wh_upper[i], p.wh_lower[i],
                       p.wh_lower[i] - p.wh_upper[i]);
  }
  return out.str();
}

std::string profile_svg(const IcebergProfile& p) {
  constexpr double W = 640, H = 400, M = 50;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < p.thetas.size(); ++i) {
    lo = std::min({lo, p.wh_upper[i], p.wh_lower[i]});
    hi = std::max({hi, p.wh_upper[i], p.wh_lower[i]});
  }
  if (!(hi > lo)) hi = lo + 1.0;
  auto x = [&](double t) { return M + (W - 2 * M) * t / std::numbers::pi; };
  auto y = [&](double v) { return H - M - (H - 2 * M) * (v - lo) / (hi - lo); };
  auto line = [&](const std::vector<double>& vals, const char* color) {
    std::string pts;
    for (std::size_t i = 0; i < vals.size(); ++i) pts += fmt::format("{:.2f},{:.2f} ", x(p.thetas[i]), y(vals[i]));
    return fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
  };
  std::ostringstream out;
  out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n", W, H);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", M, H - M, W - M);
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", M, H - M, M);
  out << line(p.wh_upper, "#1f77b4") << line(p.wh_lower, "#d62728");
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">theta in [0, pi)</text>\n", W / 2 - 40, H - 15);
  out << fmt::format("<text x=\"{}\" y=\"20\" font-size=\"12\" fill=\"#1f77b4\">w_h(upper)</text>\n", M);
  out << fmt::format("<text x=\"{}\" y=\"20\" font-size=\"12\" fill=\"#d62728\">w_h(lower)</text>\n", M + 100);
  out << fmt::format("<text x=\"{}\" y=\"20\" font-size=\"12\">{} margin {:.6g}</text>\n", M + 200,
                     to_string(p.orientation), p.margin);
  out << fmt::format("<text x=\"5\" y=\"{:.1f}\" font-size=\"10\">{:.4g}</text>\n", y(lo), lo);
  out << fmt::format("<text x=\"5\" y=\"{:.1f}\" font-size=\"10\">{:.4g}</text>\n", y(hi), hi);
  out << "</svg>\n";
  return out.str();
}

std::string polygons_svg(const std::vector<SvgPolygon>& polygons, const std::vector<Circle2>& circles) {
  constexpr double W = 600, M = 30;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  auto grow = [&](const Vec2& p, double r) {
    xmin = std::min(xmin, p.x() - r);
    xmax = std::max(xmax, p.x() + r);
    ymin = std::min(ymin, p.y() - r);
    ymax = std::max(ymax, p.y() + r);
  };
  for (const auto& p : polygons) {
    for (const Vec2& v : p.polygon.vertices()) grow(v, 0.0);
  }
  for (const auto& c : circles) grow(c.center, c.radius);
  if (!std::isfinite(xmin)) xmin = ymin = -1, xmax = ymax = 1;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double s = (W - 2 * M) / span;
  auto px = [&](double x) { return M + s * (x - xmin); };
  auto py = [&](double y) { return W - M - s * (y - ymin); };
  std::ostringstream out;
  out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\">\n", W);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int row = 0;
  for (const auto& p : polygons) {
    std::string pts;
    for (const Vec2& v : p.polygon.vertices()) pts += fmt::format("{:.2f},{:.2f} ", px(v.x()), py(v.y()));
    out << fmt::format("<polygon fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", p.color, pts);
    if (!p.label.empty()) {
      out << fmt::format("<text x=\"10\" y=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>\n", 15 + 15 * row++, p.color, p.label);
    }
  }
  for (const auto& c : circles) {
    out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n",
                       px(c.center.x()), py(c.center.y()), s * c.radius);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace holdcert::io
