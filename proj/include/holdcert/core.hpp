#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace holdcert {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Predicate tolerance (geom) and optimizer convergence tolerance (opt).
struct Tolerances {
  double geom = 1e-9;
  double opt = 1e-6;
};

enum class ErrorKind {
  DegenerateInput,
  EmptyResult,
  InvalidInput,
  InvalidParam,
  NoBlockingSlice,
  NotFound,
  InvalidStart,
  NoSolution,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Set {p : normal . p <= offset}; normal is unit length.
struct HalfSpace {
  Vec3 normal;
  double offset = 0.0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
  HalfSpace complement() const { return {-normal, -offset}; }
};

// Right-handed orthonormal frame of a plane: e1 x e2 = normal.
struct PlaneFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
  Vec3 normal = Vec3::UnitZ();

  static PlaneFrame from_normal(const Vec3& normal, const Vec3& origin);

  Vec3 to_world(const Vec2& st) const { return origin + st.x() * e1 + st.y() * e2; }
  Vec2 to_local(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(e1), d.dot(e2)};
  }
  // Rotation whose rows are (e1, e2, normal): world direction -> frame direction.
  Mat3 rotation() const;
};

// Deterministic, platform-independent uniform draws on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec3 unit_vector();
  std::uint64_t next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace holdcert
