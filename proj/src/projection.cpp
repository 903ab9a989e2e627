#include "holdcert/projection.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holdcert {

const char* to_string(IcebergOrientation o) {
  switch (o) {
    case IcebergOrientation::AsGiven: return "AsGiven";
    case IcebergOrientation::Flipped: return "Flipped";
    case IcebergOrientation::Neither: return "Neither";
    case IcebergOrientation::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

SplitBody split_in_frame(const Polytope3& k_in_frame, const Tolerances& tol) {
  SplitBody s;
  s.body = k_in_frame;
  try {
    s.upper = clip_halfspace(k_in_frame, {-Vec3::UnitZ(), 0.0}, tol);
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::EmptyResult) throw;
  }
  try {
    s.lower = clip_halfspace(k_in_frame, {Vec3::UnitZ(), 0.0}, tol);
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::EmptyResult) throw;
  }
  return s;
}

SplitBody split_body(const Polytope3& k, const PlaneFrame& frame, const Tolerances& tol) {
  const Mat3 r = frame.rotation();
  SplitBody s = split_in_frame(k.transformed(r, -(r * frame.origin)), tol);
  s.frame = frame;
  return s;
}

SplitBody split_body(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol) {
  return split_body(k, PlaneFrame::from_normal(plane.normal, plane.offset * plane.normal), tol);
}

Polygon2 project_vertical(const Polytope3& k, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<Vec2> pts;
  pts.reserve(k.vertices().size());
  for (const auto& v : k.vertices()) pts.emplace_back(c * v.x() + s * v.y(), v.z());
  return Polygon2::hull(pts);
}

ProjectedPair split_project(const SplitBody& split, double theta) {
  if (!split.upper || !split.lower) {
    throw GeometryError(ErrorKind::InvalidInput, "plane does not cut the interior of the body");
  }
  return {theta, project_vertical(*split.upper, theta), project_vertical(*split.lower, theta)};
}

ProjectedPair split_project(const Polytope3& k, const HalfSpace& plane, double theta,
                            const Tolerances& tol) {
  return split_project(split_body(k, plane, tol), theta);
}

IcebergProfile iceberg_profile(const SplitBody& split, const ProfileOptions& options) {
  if (!split.upper || !split.lower) {
    throw GeometryError(ErrorKind::InvalidInput, "plane does not cut the interior of the body");
  }
  if (options.samples < 4) throw GeometryError(ErrorKind::InvalidParam, "need at least 4 samples");
  const Polytope3& up = *split.upper;
  const Polytope3& lo = *split.lower;
  auto diff = [&](double theta) {
    return horizontal_width(project_vertical(lo, theta)).width -
           horizontal_width(project_vertical(up, theta)).width;
  };

  IcebergProfile p;
  const int n = options.samples;
  const double h = std::numbers::pi / n;
  int arg_min = 0;
  int arg_max = 0;
  for (int i = 0; i < n; ++i) {
    const double theta = i * h;
    p.thetas.push_back(theta);
    p.wh_upper.push_back(horizontal_width(project_vertical(up, theta)).width);
    p.wh_lower.push_back(horizontal_width(project_vertical(lo, theta)).width);
    const double d = p.wh_lower.back() - p.wh_upper.back();
    if (d < p.wh_lower[arg_min] - p.wh_upper[arg_min]) arg_min = i;
    if (d > p.wh_lower[arg_max] - p.wh_upper[arg_max]) arg_max = i;
  }
  p.margin = p.wh_lower[arg_min] - p.wh_upper[arg_min];
  p.margin_theta = p.thetas[arg_min];
  p.flipped_margin = p.wh_upper[arg_max] - p.wh_lower[arg_max];
  p.flipped_theta = p.thetas[arg_max];

  if (options.refine) {
    // One local pass on each side of the extreme samples; the profile is periodic in pi.
    const auto lo_r = opt::brent_minimize(diff, p.margin_theta - h, p.margin_theta + h);
    if (lo_r.value < p.margin) {
      p.margin = lo_r.value;
      p.margin_theta = std::fmod(lo_r.x + std::numbers::pi, std::numbers::pi);
    }
    const auto hi_r = opt::brent_minimize([&](double t) { return -diff(t); }, p.flipped_theta - h,
                                          p.flipped_theta + h);
    if (hi_r.value < p.flipped_margin) {
      p.flipped_margin = hi_r.value;
      p.flipped_theta = std::fmod(hi_r.x + std::numbers::pi, std::numbers::pi);
    }
  }

  const double band = options.indeterminate_band;
  if (p.margin > band) {
    p.orientation = IcebergOrientation::AsGiven;
  } else if (p.flipped_margin > band) {
    p.orientation = IcebergOrientation::Flipped;
  } else if (p.margin < -band && p.flipped_margin < -band) {
    p.orientation = IcebergOrientation::Neither;
  } else {
    p.orientation = IcebergOrientation::Indeterminate;
  }
  return p;
}

IcebergProfile iceberg_profile(const Polytope3& k, const HalfSpace& plane, const ProfileOptions& options,
                               const Tolerances& tol) {
  return iceberg_profile(split_body(k, plane, tol), options);
}

ThetaMin min_horizontal_width(const Polytope3& k, int samples) {
  const auto r = opt::grid_then_brent(
      [&](double theta) { return horizontal_width(project_vertical(k, theta)).width; }, 0.0,
      std::numbers::pi, samples);
  return {r.x, r.value};
}

}  // namespace holdcert
