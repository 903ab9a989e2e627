#include "holdcert/acceptance.hpp"
#include "holdcert/families.hpp"
#include "holdcert/holding.hpp"
#include "holdcert/io.hpp"
#include "holdcert/projection.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace holdcert;
using io::Json;

namespace {

enum Exit { Ok = 0, Failure = 1, Escaped = 2, Inconclusive = 3 };

struct Globals {
  Tolerances tol;
  int theta_samples = 720;
  std::size_t budget = 100000;
  bool budget_given = false;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

Json settings_json(const Globals& g) {
  return Json{{"tol_geom", g.tol.geom},
              {"tol_opt", g.tol.opt},
              {"theta_samples", g.theta_samples},
              {"budget", g.budget},
              {"seed", g.seed}};
}

std::string canonical_family(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  static const std::map<std::string, std::string> aliases{
      {"flat_tetra", "flat_tetrahedron"},   {"skew_tetra", "skew_tetrahedron"},
      {"wd_tetra", "wd_tetrahedron"},       {"octahedron", "octahedron_iceberg"},
      {"seven_vertex", "seven_vertex_iceberg"}, {"bevelled", "bevelled_cylinder"},
      {"five_vertex", "five_vertex_flat"},  {"simplex_hull", "simplex_hull_nd"},
  };
  const auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

HalfSpace circle_plane(const Circle3& c) { return {c.normal, c.normal.dot(c.center)}; }

EscapeOptions escape_options(const Globals& g) {
  EscapeOptions e;
  e.budget = g.budget;
  e.seed = g.seed;
  return e;
}

// ---- construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::map<std::string, double> params;
};

int cmd_construct(const Globals& g, const ConstructArgs& args) {
  const fs::path out(g.out_dir);
  const std::string name = canonical_family(args.family);
  if (name == "simplex_hull_nd") {
    for (const char* key : {"n", "a", "h"}) {
      if (!args.params.count(key)) throw GeometryError(ErrorKind::InvalidParam, fmt::format("simplex_hull_nd needs --{}", key));
    }
    const FamilyInstanceND f =
        simplex_hull_nd(static_cast<int>(args.params.at("n")), args.params.at("a"), args.params.at("h"));
    const Json j = io::to_json(f);
    io::write_json(out / "body.json", Json{{"dimension", j["dimension"]}, {"vertices", j["vertices"]}});
    io::write_json(out / "predictions.json", Json{{"family", f.family}, {"params", j["params"]}, {"predicted", j["predicted"]}});
    fmt::print("{}: {} vertices in dimension {}\n", f.family, f.body.vertices.size(), f.body.dimension);
    return Ok;
  }
  if (!family_parameters().count(name)) throw GeometryError(ErrorKind::InvalidParam, "unknown family: " + args.family);
  const FamilyInstance f = make_family(name, args.params);
  io::write_json(out / "body.json", io::to_json(f.body));
  io::write_json(out / "predictions.json", io::to_json(f));
  std::vector<Circle3> circles;
  if (f.circle) {
    io::write_json(out / "circle.json", io::to_json(*f.circle));
    circles.push_back(*f.circle);
  }
  io::write_text(out / "scene.obj", io::obj_scene(f.body, circles));
  fmt::print("{}: {} vertices, {} faces -> {}\n", f.family, f.body.vertices().size(), f.body.faces().size(), out.string());
  for (const auto& [key, p] : f.predicted) {
    std::string values;
    for (double v : p.value) values += fmt::format("{}{:.10g}", values.empty() ? "" : ", ", v);
    fmt::print("  {} = {}   [{}]\n", key, values, p.formula);
  }
  return Ok;
}

// ---- analyze -------------------------------------------------------------------

struct AnalyzeArgs {
  std::string body;
  std::string circle;
  bool no_search = false;
  bool profile_csv = false;
  bool svg = false;
  bool require_verdict = false;
  bool with_chain = false;
};

int cmd_analyze(const Globals& g, const AnalyzeArgs& args) {
  const Polytope3 k = io::polytope_from_json(io::read_json(args.body), g.tol);
  const fs::path out(g.out_dir);
  const WidthResult w = width3(k);
  const CylinderResult cyl = min_cylinder(k, {}, g.tol);

  Json report{{"body", fs::path(args.body).stem().string()},
              {"vertices", k.vertices().size()},
              {"width", io::to_json(w)},
              {"min_cylinder", io::to_json(cyl)}};

  std::optional<Circle3> circle;
  std::optional<HoldingReport> holding;
  std::string circle_source = "none";
  CertifyOptions certify;
  certify.escape = escape_options(g);
  certify.with_chain = args.with_chain;
  if (!args.circle.empty()) {
    circle = io::circle_from_json(io::read_json(args.circle));
    circle_source = "given";
    holding = certify_holding(k, *circle, certify, g.tol);
  } else if (!args.no_search) {
    HoldingSearchOptions search;
    search.escape.seed = g.seed;
    if (g.budget_given) search.escape.budget = g.budget;
    try {
      HoldingSearchResult found = min_holding_circle(k, search, g.tol);
      circle = found.circle;
      circle_source = "search";
      holding = args.with_chain ? certify_holding(k, *circle, certify, g.tol) : found.report;
      report["search_candidates"] = found.candidates.size();
    } catch (const GeometryError& e) {
      if (e.kind() != ErrorKind::NotFound) throw;
      circle_source = "search found no certified circle";
    }
  }
  report["circle_source"] = circle_source;
  report["circle"] = circle ? io::to_json(*circle) : Json(nullptr);

  std::optional<IcebergProfile> profile;
  if (circle) {
    try {
      profile = iceberg_profile(k, circle_plane(*circle), ProfileOptions{g.theta_samples, true}, g.tol);
    } catch (const GeometryError& e) {
      report["iceberg_profile_error"] = e.what();
    }
  }
  report["iceberg_profile"] = profile ? io::to_json(*profile) : Json(nullptr);
  report["holding"] = holding ? io::to_json(*holding) : Json(nullptr);
  Json ratios = Json::object();
  if (circle) {
    ratios["d/w"] = io::round_sig(circle->diameter / w.width);
    ratios["d/D"] = io::round_sig(circle->diameter / cyl.diameter);
  }
  report["ratios"] = ratios;
  report["settings"] = settings_json(g);
  io::write_json(out / "report.json", report);
  if (profile && args.profile_csv) io::write_text(out / "profile.csv", io::profile_csv(*profile));
  if (profile && args.svg) io::write_text(out / "profile.svg", io::profile_svg(*profile));

  fmt::print("body          {} ({} vertices)\n", report["body"].get<std::string>(), k.vertices().size());
  fmt::print("width w       {:.10g}\n", w.width);
  fmt::print("cylinder D    {:.10g}\n", cyl.diameter);
  if (circle) {
    fmt::print("circle ({})  d = {:.10g}, center ({:.8g}, {:.8g}, {:.8g}), normal ({:.6g}, {:.6g}, {:.6g})\n", circle_source,
               circle->diameter, circle->center.x(), circle->center.y(), circle->center.z(), circle->normal.x(),
               circle->normal.y(), circle->normal.z());
    fmt::print("ratios        d/w = {:.8g}, d/D = {:.8g}\n", circle->diameter / w.width, circle->diameter / cyl.diameter);
  } else {
    fmt::print("circle        {}\n", circle_source);
  }
  if (profile) fmt::print("iceberg       {} (margin {:.6g}, flipped {:.6g})\n", to_string(profile->orientation), profile->margin, profile->flipped_margin);
  if (holding) fmt::print("verdict       {}\n", to_string(holding->verdict));
  fmt::print("report        {}\n", (out / "report.json").string());

  if (!holding) return args.require_verdict ? Inconclusive : Ok;
  switch (holding->verdict) {
    case Verdict::CertifiedHoldingEvidence:
      return Ok;
    case Verdict::EscapeFound:
      return Escaped;
    case Verdict::Inconclusive:
      return args.require_verdict ? Inconclusive : Ok;
  }
  return Ok;
}

// ---- escape / chain / render -----------------------------------------------------

struct PairArgs {
  std::string body;
  std::string circle;
};

int cmd_escape(const Globals& g, const PairArgs& args) {
  const Polytope3 k = io::polytope_from_json(io::read_json(args.body), g.tol);
  const Circle3 c = io::circle_from_json(io::read_json(args.circle));
  const EscapeResult e = escape_search(k, c, escape_options(g), g.tol);
  Json j = io::to_json(e);
  if (e.path) j["path_valid"] = validate_escape_path(k, c.diameter, *e.path, e.step, g.tol);
  j["settings"] = settings_json(g);
  io::write_json(fs::path(g.out_dir) / "escape.json", j);
  if (e.found()) {
    fmt::print("Found: escape path with {} poses ({} poses explored)\n", e.path->poses.size(), e.poses_used);
    return Escaped;
  }
  fmt::print("NotFoundWithinBudget: {} poses explored, tree size {}\n", e.poses_used, e.tree_size);
  return Ok;
}

int cmd_chain(const Globals& g, const PairArgs& args) {
  const Polytope3 k = io::polytope_from_json(io::read_json(args.body), g.tol);
  const Circle3 c = io::circle_from_json(io::read_json(args.circle));
  const ChainCertificate chain = chain_certificate(k, c, ChainOptions{200, g.theta_samples}, g.tol);
  const ExtremalityDiagnostics ext = extremality_diagnostics(chain);
  Json j = io::to_json(chain);
  j["extremality"] = io::to_json(ext);
  j["settings"] = settings_json(g);
  const fs::path out(g.out_dir);
  io::write_json(out / "chain.json", j);
  const double r = 0.5 * c.diameter;
  io::write_text(out / "section.svg",
                 io::polygons_svg({{chain.section, "#1f77b4", "section of the contact prism"},
                                   {ext.fit.triangle, "#2ca02c", "fitted equilateral triangle"}},
                                  {Circle2{Vec2::Zero(), r}}));
  fmt::print("w = {:.10g} <= min w_h(lower) = {:.10g} : {}\n", chain.width, chain.min_wh_lower, chain.width_le_lower);
  fmt::print("min w_h(lower) < w2(section) = {:.10g} : {}\n", chain.section_width, chain.lower_lt_section);
  fmt::print("min w_h(prism) = {:.10g} equals w2(section) : {}\n", chain.min_wh_section_projection, chain.projection_eq_section);
  fmt::print("w2(section) <= 3d/2 = {:.10g} : {}\n", chain.three_halves_d, chain.section_le_bound);
  fmt::print("triangle Hausdorff {:.3g}, cluster distance {:.3g}, gap {:.6g}\n", ext.hausdorff, ext.cluster_distance, ext.gap);
  return chain.all_hold() ? Ok : Failure;
}

int cmd_render(const Globals& g, const PairArgs& args) {
  const Polytope3 k = io::polytope_from_json(io::read_json(args.body), g.tol);
  const fs::path out(g.out_dir);
  std::vector<Circle3> circles;
  if (!args.circle.empty()) circles.push_back(io::circle_from_json(io::read_json(args.circle)));
  io::write_text(out / "scene.obj", io::obj_scene(k, circles));
  fmt::print("wrote {}\n", (out / "scene.obj").string());
  if (circles.empty()) return Ok;
  const Circle3& c = circles.front();
  const IcebergProfile p = iceberg_profile(k, circle_plane(c), ProfileOptions{g.theta_samples, true}, g.tol);
  io::write_text(out / "profile.svg", io::profile_svg(p));
  io::write_text(out / "profile.csv", io::profile_csv(p));
  const Slice s = slice_plane(k, circle_plane(c), g.tol);
  io::write_text(out / "slice.svg", io::polygons_svg({{s.polygon, "#1f77b4", "slice in the circle plane"}},
                                                     {Circle2{s.frame.to_local(c.center), c.radius()}}));
  fmt::print("wrote profile.svg, profile.csv, slice.svg\n");
  return Ok;
}

// ---- verify ------------------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& suite, bool quiet) {
  acceptance::Options o;
  o.seed = g.seed;
  o.tol = g.tol;
  o.theta_samples = g.theta_samples;
  o.escape_budget = g.budget;
  const auto ids = acceptance::resolve_suite(suite);
  int passed = 0;
  const auto results = acceptance::run_suite(suite, o, [&](const acceptance::CriterionResult& r) {
    passed += r.pass() ? 1 : 0;
    fmt::print("{}\n", acceptance::summary_line(r));
    if (!quiet || !r.pass()) fmt::print("{}", acceptance::detail_lines(r));
    std::fflush(stdout);
  });
  fmt::print("{}/{} criteria passed\n", passed, ids.size());
  return passed == static_cast<int>(results.size()) ? Ok : Failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holding circles of convex polytopes: construction, certification, verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol-geom", g.tol.geom, "geometric tolerance")->capture_default_str();
  app.add_option("--tol-opt", g.tol.opt, "optimizer tolerance")->capture_default_str();
  app.add_option("--theta-samples", g.theta_samples, "theta samples for horizontal-width profiles")->capture_default_str();
  auto* budget = app.add_option("--budget", g.budget, "escape search budget (poses)")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "directory for written files")->capture_default_str();

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "build a named family and write body.json, predictions.json, scene.obj");
  c->set_help_flag("--help", "Print this help message and exit");  // -h is the height parameter
  c->add_option("family", construct.family, "family name, e.g. octahedron-iceberg, flat-tetra")->required();
  for (const char* key : {"a", "h", "eps", "R", "m", "p", "q", "s", "n"}) {
    c->add_option_function<double>(fmt::format("--{}", key), [&construct, key](double v) { construct.params[key] = v; },
                                   fmt::format("family parameter {}", key));
  }

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "width, cylinder, holding circle, iceberg profile and holding report");
  a->add_option("body", analyze.body, "body JSON")->required()->check(CLI::ExistingFile);
  a->add_option("--circle", analyze.circle, "circle JSON")->check(CLI::ExistingFile);
  a->add_flag("--no-search", analyze.no_search, "skip the holding circle search when no circle is given");
  a->add_flag("--profile-csv", analyze.profile_csv, "write profile.csv");
  a->add_flag("--svg", analyze.svg, "write profile.svg");
  a->add_flag("--chain", analyze.with_chain, "attach the width chain certificate");
  a->add_flag("--require-verdict", analyze.require_verdict, "exit 3 when the verdict is inconclusive");

  PairArgs escape;
  auto* e = app.add_subcommand("escape", "randomized search for an escape motion of the circle");
  e->add_option("body", escape.body, "body JSON")->required()->check(CLI::ExistingFile);
  e->add_option("circle", escape.circle, "circle JSON")->required()->check(CLI::ExistingFile);

  PairArgs chain;
  auto* ch = app.add_subcommand("chain", "width chain certificate for a horizontal holding circle");
  ch->add_option("body", chain.body, "body JSON")->required()->check(CLI::ExistingFile);
  ch->add_option("circle", chain.circle, "circle JSON")->required()->check(CLI::ExistingFile);

  std::string suite = "all";
  bool quiet = false;
  auto* v = app.add_subcommand("verify-paper", "run the acceptance suite");
  v->add_option("--suite", suite, "all, ratios, iceberg, residuals, planar, chain, tetrahedra, higher-dim, bevelled, oracles, fast, or a number 1-14")
      ->capture_default_str();
  v->add_flag("--quiet", quiet, "print check details only for failures");

  PairArgs render;
  auto* r = app.add_subcommand("render", "write scene.obj and, with a circle, profile and slice figures");
  r->add_option("body", render.body, "body JSON")->required()->check(CLI::ExistingFile);
  r->add_option("--circle", render.circle, "circle JSON")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? Ok : Failure;
  }
  g.budget_given = budget->count() > 0;

  try {
    if (*c) return cmd_construct(g, construct);
    if (*a) return cmd_analyze(g, analyze);
    if (*e) return cmd_escape(g, escape);
    if (*ch) return cmd_chain(g, chain);
    if (*v) return cmd_verify(g, suite, quiet);
    if (*r) return cmd_render(g, render);
  } catch (const GeometryError& err) {
    fmt::print(stderr, "error ({}): {}\n", to_string(err.kind()), err.what());
    if (*c && err.kind() == ErrorKind::InvalidParam) fmt::print(stderr, "{}", c->help());
    return Failure;
  } catch (const std::exception& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return Failure;
  }
  return Failure;
}
