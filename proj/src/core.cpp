#include "holdcert/core.hpp"

#include <cmath>
#include <numbers>

namespace holdcert {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::NoBlockingSlice: return "NoBlockingSlice";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::InvalidStart: return "InvalidStart";
    case ErrorKind::NoSolution: return "NoSolution";
  }
  return "Unknown";
}

GeometryError::GeometryError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

PlaneFrame PlaneFrame::from_normal(const Vec3& normal, const Vec3& origin) {
  PlaneFrame f;
  f.origin = origin;
  f.normal = normal.normalized();
  // Horizontal planes keep x as the first axis so slices read as (x, y).
  Vec3 ref = Vec3::UnitX();
  if (std::abs(f.normal.x()) > 0.9) ref = Vec3::UnitY();
  f.e1 = (ref - ref.dot(f.normal) * f.normal).normalized();
  f.e2 = f.normal.cross(f.e1);
  return f;
}

Mat3 PlaneFrame::rotation() const {
  Mat3 r;
  r.row(0) = e1.transpose();
  r.row(1) = e2.transpose();
  r.row(2) = normal.transpose();
  return r;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller; avoids the implementation-defined std::normal_distribution.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 Rng::unit_vector() {
  for (;;) {
    Vec3 v(normal(), normal(), normal());
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

}  // namespace holdcert
