#pragma once

#include "holdcert/planar.hpp"
#include "holdcert/polytope.hpp"

#include <optional>
#include <vector>

namespace holdcert {

// Body expressed in a frame where the cutting plane is t = 0 (z = 0), with
// the parts above and below it. Either part is empty when the plane misses
// the interior.
struct SplitBody {
  Polytope3 body;
  std::optional<Polytope3> upper;
  std::optional<Polytope3> lower;
  PlaneFrame frame;  // world placement of the t = 0 plane
};

// Rigidly moves `k` so that `plane` (normal . p = offset) becomes z = 0 with
// its normal along +z, then splits it.
SplitBody split_body(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol = {});
// Same, with an explicit frame (its origin and in-plane axes fix s and theta).
SplitBody split_body(const Polytope3& k, const PlaneFrame& frame, const Tolerances& tol = {});

// Splits a body already expressed in the cutting-plane frame.
SplitBody split_in_frame(const Polytope3& k_in_frame, const Tolerances& tol = {});

// Orthogonal projection onto the vertical plane at angle theta:
// s = x cos(theta) + y sin(theta), t = z.
Polygon2 project_vertical(const Polytope3& k, double theta);

struct ProjectedPair {
  double theta = 0.0;
  Polygon2 upper;  // projection of the part above the plane
  Polygon2 lower;  // projection of the part below
};

ProjectedPair split_project(const SplitBody& split, double theta);
ProjectedPair split_project(const Polytope3& k, const HalfSpace& plane, double theta,
                            const Tolerances& tol = {});

enum class IcebergOrientation { AsGiven, Flipped, Neither, Indeterminate };

const char* to_string(IcebergOrientation o);

struct IcebergProfile {
  std::vector<double> thetas;
  std::vector<double> wh_upper;
  std::vector<double> wh_lower;
  double margin = 0.0;          // min over theta of (wh_lower - wh_upper), refined
  double margin_theta = 0.0;
  double flipped_margin = 0.0;  // min over theta of (wh_upper - wh_lower), refined
  double flipped_theta = 0.0;
  IcebergOrientation orientation = IcebergOrientation::Neither;
};

struct ProfileOptions {
  int samples = 720;
  bool refine = true;
  double indeterminate_band = 1e-7;
};

IcebergProfile iceberg_profile(const SplitBody& split, const ProfileOptions& options = {});
IcebergProfile iceberg_profile(const Polytope3& k, const HalfSpace& plane,
                               const ProfileOptions& options = {}, const Tolerances& tol = {});

// min over theta of w_h(projection of k), grid plus Brent refinement.
struct ThetaMin {
  double theta = 0.0;
  double value = 0.0;
};

ThetaMin min_horizontal_width(const Polytope3& k, int samples = 720);

}  // namespace holdcert
