#pragma once

#include "holdcert/planar.hpp"
#include "holdcert/polytope.hpp"
#include "holdcert/projection.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace holdcert {

struct Circle3 {
  Vec3 center = Vec3::Zero();
  double diameter = 1.0;
  Vec3 normal = Vec3::UnitZ();

  double radius() const { return 0.5 * diameter; }
  // Frame centered on the circle with the circle's normal as third axis.
  PlaneFrame frame() const { return PlaneFrame::from_normal(normal, center); }
  Vec3 point(double angle) const;
};

struct PenetrationResult {
  bool intersects = false;
  std::optional<Vec3> witness;  // a circle point inside int K
};

// Exact arc test: the circle points strictly inside one face form an open
// arc; the circle meets int K iff those arcs share a point. Contacts within
// tol.geom count as touching, not penetrating.
PenetrationResult circle_interior_intersects(const Circle3& c, const Polytope3& k,
                                             const Tolerances& tol = {});

// Minimal enclosing circle of the cross-section by `plane`.
Circle3 slice_circle(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol = {});

struct SliceRecord {
  double height = 0.0;
  Vec3 center = Vec3::Zero();
  double diameter = 0.0;
};

struct SliceCircumProfile {
  std::vector<SliceRecord> records;  // heights strictly increasing
};

// Circumscribed circles of the slices normal to `axis` across the whole extent of `side`.
SliceCircumProfile slice_circum_profile(const Polytope3& side, const Vec3& axis, int n_heights,
                                        const Tolerances& tol = {});

struct BlockCertificate {
  bool blocked_above = false;
  bool blocked_below = false;
  double max_diameter_above = 0.0;  // largest slice circumdiameter on each side
  double max_diameter_below = 0.0;
  double height_above = 0.0;        // signed distance from the circle plane
  double height_below = 0.0;
};

// A side is blocked when one of its slices parallel to the circle has a
// circumdiameter above d + tol.opt; otherwise the circle escapes by
// following the slice circumcenters.
BlockCertificate translation_block_certificate(const Polytope3& k, const Circle3& c,
                                               const Tolerances& tol = {}, int n_heights = 200);

// Distance between segments [a0,a1] and [b0,b1], with the closest points.
double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1,
                        Vec3* on_a = nullptr, Vec3* on_b = nullptr);

struct EdgeBound {
  double distance = 0.0;
  std::pair<int, int> edges{-1, -1};  // indices into Polytope3::edges()
};

// Min distance over pairs of edges without a common vertex: a lower bound
// on the diameter of any holding circle of a polyhedron.
EdgeBound nonintersecting_edge_bound(const Polytope3& k);

// ---- escape search -------------------------------------------------------

struct Pose {
  Vec3 center = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
};

struct EscapePath {
  std::vector<Pose> poses;
  std::vector<bool> collision_free;
};

struct EscapeOptions {
  std::size_t budget = 100000;
  std::uint64_t seed = 1;
  double step = 0.0;           // 0: circumradius / 50
  double escape_radius = 0.0;  // 0: 10 * circumradius
  double goal_bias = 0.3;
  int max_halvings = 16;  // blocked steps are retried at half length this many times
};

struct EscapeResult {
  std::optional<EscapePath> path;
  std::size_t poses_used = 0;
  std::size_t tree_size = 0;
  double step = 0.0;
  double escape_radius = 0.0;
  bool found() const { return path.has_value(); }
};

// Seeded rapidly-exploring tree over circle poses (3 translations, 2
// rotations). Throws InvalidStart if the start circle penetrates K.
EscapeResult escape_search(const Polytope3& k, const Circle3& start, const EscapeOptions& options = {},
                           const Tolerances& tol = {});

// Post-hoc check: every pose free of int K and consecutive poses within `step`.
bool validate_escape_path(const Polytope3& k, double diameter, const EscapePath& path, double step,
                          const Tolerances& tol = {});

// ---- chain certificate ---------------------------------------------------

struct ChainOptions {
  int heights = 200;
  int theta_samples = 720;
};

// All positions are in the circle frame: circle center at the origin, the
// circle plane is z = 0.
struct ChainCertificate {
  PlaneFrame frame;
  double diameter = 0.0;

  double slice_height = 0.0;
  Polygon2 slice_polygon;  // (x, y) of the selected upper slice
  Vec3 slice_center = Vec3::Zero();
  double slice_diameter = 0.0;
  std::vector<Vec3> contacts;

  Vec3 axis_direction = Vec3::UnitZ();  // line through both circle centers
  double homothety_ratio = 1.0;
  std::vector<Vec3> tangent_plane_normals;  // planes through the contacts, parallel to the axis
  std::vector<Vec2> halfplane_normals;      // section with z = 0: n . x <= d / 2
  bool strip = false;
  Polygon2 section;  // truncated to a large box when `strip`

  double width = 0.0;
  double min_wh_union = 0.0;
  double min_wh_lower = 0.0;
  double min_wh_section_projection = 0.0;
  double section_width = 0.0;
  double section_inradius = 0.0;
  double three_halves_d = 0.0;
  double contact_residual = 0.0;

  bool width_le_lower = false;
  bool lower_lt_section = false;
  bool projection_eq_section = false;
  bool section_le_bound = false;
  bool all_hold() const {
    return width_le_lower && lower_lt_section && projection_eq_section && section_le_bound;
  }
};

// Throws NoBlockingSlice if no slice above the circle is wider than it.
ChainCertificate chain_certificate(const Polytope3& k, const Circle3& c, const ChainOptions& options = {},
                                   const Tolerances& tol = {});

struct TriangleFit {
  Vec2 center = Vec2::Zero();
  double rotation = 0.0;
  double height = 0.0;
  double hausdorff = 0.0;
  Polygon2 triangle;
};

// Best equilateral triangle of the given height under rotation and translation.
TriangleFit fit_equilateral_triangle(const Polygon2& p, double height);

struct ExtremalityDiagnostics {
  double hausdorff = 0.0;         // section vs fitted triangle, scaled so d = 2
  double cluster_distance = 0.0;  // unit-circle distance to the three contact directions
  double gap = 0.0;               // 3d / (2w) - 1
  TriangleFit fit;
};

ExtremalityDiagnostics extremality_diagnostics(const ChainCertificate& chain);
ExtremalityDiagnostics extremality_diagnostics(const Polytope3& k, const Circle3& c,
                                               const Tolerances& tol = {});

// ---- holding reports and search -------------------------------------------

enum class Verdict { CertifiedHoldingEvidence, EscapeFound, Inconclusive };

const char* to_string(Verdict v);

struct HoldingReport {
  bool non_penetration = false;
  bool blocked_above = false;
  bool blocked_below = false;
  BlockCertificate blocking;
  double edge_lower_bound = 0.0;
  std::optional<EscapeResult> escape;  // absent when the start pose penetrates
  std::optional<ChainCertificate> chain;
  Verdict verdict = Verdict::Inconclusive;
};

struct CertifyOptions {
  EscapeOptions escape;
  bool with_chain = false;
  int block_heights = 200;
};

HoldingReport certify_holding(const Polytope3& k, const Circle3& c, const CertifyOptions& options = {},
                              const Tolerances& tol = {});

struct HoldingSearchOptions {
  int direction_count = 400;
  int heights = 48;
  int polish_starts = 40;
  int max_certified_attempts = 8;
  EscapeOptions escape{20000, 1, 0.0, 0.0, 0.3, 16};
  bool estimate_delta = false;
};

struct HoldingCandidate {
  Circle3 circle;
  BlockCertificate blocking;
  bool certified = false;
  double grown_diameter = 0.0;  // largest certified diameter at the same pose (delta estimate runs only)
};

// Local minima of the slice circumdiameter over cutting planes, as
// non-penetrating circles sorted by diameter. Nothing is certified yet.
std::vector<HoldingCandidate> holding_candidates(const Polytope3& k, const HoldingSearchOptions& options = {},
                                                const Tolerances& tol = {});

struct HoldingSearchResult {
  Circle3 circle;
  HoldingReport report;
  double edge_lower_bound = 0.0;
  std::optional<double> delta_estimate;  // largest certified diameter over the searched basins
  std::vector<HoldingCandidate> candidates;
};

// Searches cutting planes for local minima of the slice circumdiameter (for
// a fixed plane the smallest non-penetrating linked circle is the slice's
// enclosing circle), then certifies candidates in order of diameter.
// Throws NotFound when no candidate earns CertifiedHoldingEvidence.
HoldingSearchResult min_holding_circle(const Polytope3& k, const HoldingSearchOptions& options = {},
                                       const Tolerances& tol = {});

}  // namespace holdcert
