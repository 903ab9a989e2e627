#include "holdcert/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace holdcert;

TEST_CASE("plane frame is orthonormal and right-handed") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec3 n = rng.unit_vector();
    const PlaneFrame f = PlaneFrame::from_normal(n, Vec3(1, 2, 3));
    CHECK(f.e1.norm() == doctest::Approx(1.0));
    CHECK(f.e2.norm() == doctest::Approx(1.0));
    CHECK(std::abs(f.e1.dot(f.e2)) < 1e-12);
    CHECK(std::abs(f.e1.dot(f.normal)) < 1e-12);
    CHECK((f.e1.cross(f.e2) - f.normal).norm() < 1e-12);
    const Vec2 st(0.3, -0.7);
    CHECK((f.to_local(f.to_world(st)) - st).norm() < 1e-12);
  }
}

TEST_CASE("rotation maps the frame onto the coordinate axes") {
  const PlaneFrame f = PlaneFrame::from_normal(Vec3(1, 1, 1).normalized(), Vec3::Zero());
  const Mat3 r = f.rotation();
  CHECK((r * f.normal - Vec3::UnitZ()).norm() < 1e-12);
  CHECK((r * f.e1 - Vec3::UnitX()).norm() < 1e-12);
}

TEST_CASE("rng is deterministic per seed") {
  Rng a(5);
  Rng b(5);
  Rng c(6);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    differs = differs || x != c.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(differs);
  CHECK(a.unit_vector().norm() == doctest::Approx(1.0));
}

TEST_CASE("geometry errors carry their kind") {
  const GeometryError e(ErrorKind::NoBlockingSlice, "nothing wider");
  CHECK(e.kind() == ErrorKind::NoBlockingSlice);
  CHECK(std::string(to_string(e.kind())) == "NoBlockingSlice");
  CHECK(std::string(e.what()).find("nothing wider") != std::string::npos);
}

TEST_CASE("half-space complement flips the sign of the distance") {
  const HalfSpace h{Vec3::UnitZ(), 0.5};
  const Vec3 p(0, 0, 2);
  CHECK(h.signed_distance(p) == doctest::Approx(1.5));
  CHECK(h.complement().signed_distance(p) == doctest::Approx(-1.5));
}
