#pragma once

#include "holdcert/holding.hpp"
#include "holdcert/polytope.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holdcert {

// A predicted quantity with the closed form it was evaluated from.
struct Prediction {
  std::vector<double> value;  // one entry for scalars
  std::string formula;
  double scalar() const { return value.at(0); }
};

struct FamilyInstance {
  std::string family;
  std::map<std::string, double> params;
  Polytope3 body;
  std::map<std::string, Prediction> predicted;
  std::optional<Circle3> circle;  // the predicted holding circle, when one is known
};

// Complex coordinates: (z, t) maps to (Re z, Im z, t).
Vec3 embed_complex(double re, double im, double t);

FamilyInstance octahedron_iceberg(double a, double h);
FamilyInstance seven_vertex_iceberg(double a, double h);
FamilyInstance flat_tetrahedron(double eps);
FamilyInstance five_vertex_flat(double eps);
FamilyInstance skew_tetrahedron(double eps);
FamilyInstance bevelled_cylinder(double R, int m);
FamilyInstance wd_tetrahedron(double p, double q, double s);

struct RectangleCircle {
  double alpha = 0.0;
  double beta = 0.0;
  Vec3 A, A_prime, B, B_prime;
  double residual_im = 0.0;   // Im z_A - Im z_B'
  double residual_arg = 0.0;  // Im((z_A - z_B) e^{-i pi/3})
  Circle3 circle;             // AB and A'B' are diameters
};

// Points on two upper and two lower edges of octahedron_iceberg(a, h) whose
// horizontal projections form a rectangle with diagonals orthogonal to
// those edges. The parameters do not depend on h; the circle does.
// Throws NoSolution unless both parameters lie in (0, 1).
RectangleCircle rectangle_circle_solve(double a, double h);

struct PolytopeND {
  int dimension = 0;
  std::vector<Eigen::VectorXd> vertices;
  double breadth(const Eigen::VectorXd& unit) const;
};

struct FamilyInstanceND {
  std::string family;
  std::map<std::string, double> params;
  PolytopeND body;
  std::map<std::string, Prediction> predicted;
};

// Regular simplex in R^m with n = m + 1 vertices, circumradius |scale|,
// first vertex at (scale, 0, ..., 0).
std::vector<Eigen::VectorXd> regular_simplex(int m, double scale);

// Hull of S_a x {0} and S_{1-n} x {-h} in R^n.
FamilyInstanceND simplex_hull_nd(int n, double a, double h);

double steinhagen_constant(int n);

// Upper bound on the width: best breadth over random directions, refined locally.
double width_estimate_nd(const PolytopeND& p, int samples = 20000, bool refine = true, std::uint64_t seed = 7);

// Names accepted by make_family, with their parameter names in order.
const std::map<std::string, std::vector<std::string>>& family_parameters();
FamilyInstance make_family(const std::string& name, const std::map<std::string, double>& params);

}  // namespace holdcert
