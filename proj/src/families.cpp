#include "holdcert/families.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace holdcert {

namespace {

using cplx = std::complex<double>;

const cplx J = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Vec3 at(cplx z, double t) { return embed_complex(z.real(), z.imag(), t); }

void require(bool ok, const std::string& what) {
  if (!ok) throw GeometryError(ErrorKind::InvalidParam, what);
}

Prediction scalar(double v, std::string formula) { return {{v}, std::move(formula)}; }
Prediction vec(const Vec3& v, std::string formula) { return {{v.x(), v.y(), v.z()}, std::move(formula)}; }

std::vector<Vec3> octahedron_points(double a, double h) {
  return {at(a, 0), at(J * a, 0), at(J * J * a, 0), at(-2.0, -h), at(-2.0 * J, -h), at(-2.0 * J * J, -h)};
}

void octahedron_predictions(FamilyInstance& f, double a, double h) {
  const double phi = std::atan((a - 1.0) / std::sqrt(3.0));
  const double d = 2.0 * a * std::cos(phi);
  const double z = -(h * a / (2.0 * std::sqrt(3.0))) * std::sin(2.0 * phi);
  f.predicted["phi"] = scalar(phi, "atan((a-1)/sqrt(3))");
  f.predicted["d"] = scalar(d, "2 a cos(phi)");
  f.predicted["circle_center"] = vec({0, 0, z}, "(0, 0, -(h a / (2 sqrt 3)) sin(2 phi))");
  f.predicted["d_limit"] = scalar(2.0, "d -> 2 as a -> 1");
  f.predicted["w_limit"] = scalar(3.0, "w -> 3 as h -> infinity");
  f.circle = Circle3{{0, 0, z}, d, Vec3::UnitZ()};
}

}  // namespace

Vec3 embed_complex(double re, double im, double t) { return {re, im, t}; }

FamilyInstance octahedron_iceberg(double a, double h) {
  require(a > 1.0, "octahedron_iceberg needs a > 1");
  require(h > 0.0, "octahedron_iceberg needs h > 0");
  FamilyInstance f;
  f.family = "octahedron_iceberg";
  f.params = {{"a", a}, {"h", h}};
  f.body = build_hull(octahedron_points(a, h));
  octahedron_predictions(f, a, h);
  return f;
}

FamilyInstance seven_vertex_iceberg(double a, double h) {
  require(a > 1.0, "seven_vertex_iceberg needs a > 1");
  require(h > 0.0, "seven_vertex_iceberg needs h > 0");
  FamilyInstance f;
  f.family = "seven_vertex_iceberg";
  f.params = {{"a", a}, {"h", h}};
  auto pts = octahedron_points(a, h);
  pts.push_back(at(0.0, 1.0));
  f.body = build_hull(pts);
  octahedron_predictions(f, a, h);
  f.predicted["delta_upper"] = scalar(2.0 * a, "holding diameters stay below 2a");
  return f;
}

FamilyInstance flat_tetrahedron(double eps) {
  require(eps > 0.0, "flat_tetrahedron needs eps > 0");
  FamilyInstance f;
  f.family = "flat_tetrahedron";
  f.params = {{"eps", eps}};
  const std::vector<Vec3> pts{{0, eps, 0}, {0, -eps, 0}, {1, 0, 1}, {-1, 0, 1}};
  f.body = build_hull(pts);
  const double alpha = std::atan(eps);
  const double d = 2.0 * std::sin(alpha);
  f.predicted["alpha"] = scalar(alpha, "atan(eps)");
  f.predicted["d"] = scalar(d, "2 sin(alpha)");
  f.predicted["circle_center"] = vec({0, 0, d * d / 4.0}, "(0, 0, d^2/4)");
  f.predicted["D"] = scalar(1.0 + eps * eps, "1 + eps^2");
  f.predicted["cylinder_axis_point"] = vec({0, 0, (1.0 - eps * eps) / 2.0}, "(x, 0, (1-eps^2)/2)");
  f.predicted["cylinder_axis_direction"] = vec({1, 0, 0}, "x axis");
  f.circle = Circle3{{0, 0, d * d / 4.0}, d, Vec3::UnitZ()};
  return f;
}

FamilyInstance five_vertex_flat(double eps) {
  FamilyInstance f = flat_tetrahedron(eps);
  f.family = "five_vertex_flat";
  std::vector<Vec3> pts{{0, eps, 0}, {0, -eps, 0}, {1, 0, 1}, {-1, 0, 1}, {0, 0, -eps * eps}};
  f.body = build_hull(pts);
  f.predicted.erase("D");
  f.predicted.erase("cylinder_axis_point");
  f.predicted.erase("cylinder_axis_direction");
  return f;
}

FamilyInstance skew_tetrahedron(double eps) {
  require(eps > 0.0 && eps < 1.0, "skew_tetrahedron needs 0 < eps < 1");
  const double a = eps * eps;
  FamilyInstance f;
  f.family = "skew_tetrahedron";
  f.params = {{"eps", eps}};
  const std::vector<Vec3> pts{{-2, -1, eps}, {-1, 0, 0}, {2 * a, a, eps}, {a, 0, 0}};
  f.body = build_hull(pts);
  f.predicted["d"] = scalar(eps, "eps");
  f.predicted["circle_center"] = vec({0, 0, eps / 2.0}, "(0, 0, eps/2)");
  f.predicted["circle_normal"] = vec({1, 0, 0}, "plane x = 0");
  f.predicted["crossing_A1A4"] = vec({0, -a / (a + 2), a * eps / (a + 2)}, "(0, -a/(a+2), a eps/(a+2))");
  f.predicted["crossing_A2A3"] = vec({0, a / (2 * a + 1), eps / (2 * a + 1)}, "(0, a/(2a+1), eps/(2a+1))");
  f.circle = Circle3{{0, 0, eps / 2.0}, eps, Vec3::UnitX()};
  return f;
}

FamilyInstance bevelled_cylinder(double R, int m) {
  require(R > 2.0, "bevelled_cylinder needs R > 2");
  require(m >= 16, "bevelled_cylinder needs m >= 16");
  FamilyInstance f;
  f.family = "bevelled_cylinder";
  f.params = {{"R", R}, {"m", static_cast<double>(m)}};
  std::vector<Vec3> pts{{-R, -1, 0}, {-R, 1, 0}, {R, 0, -1}, {R, 0, 1}};
  for (const double x : {1.0 - R, R - 1.0}) {
    for (int i = 0; i < m; ++i) {
      const double t = 2.0 * std::numbers::pi * i / m;
      pts.emplace_back(x, std::cos(t), std::sin(t));
    }
  }
  f.body = build_hull(pts);
  f.predicted["d"] = scalar(2.0 * R, "2R (diameter of the circle on [-R, R] x {0} x {0})");
  f.predicted["d_radius_convention"] = scalar(R, "R");
  f.predicted["D"] = scalar(2.0, "2 (unit circles about the x axis)");
  f.predicted["D_radius_convention"] = scalar(1.0, "1");
  f.predicted["circle_normal"] = vec(Vec3(0, -1, 1).normalized(), "(0, -1, 1)/sqrt(2)");
  f.circle = Circle3{Vec3::Zero(), 2.0 * R, Vec3(0, -1, 1).normalized()};
  return f;
}

FamilyInstance wd_tetrahedron(double p, double q, double s) {
  require(p > 0 && q > 0 && s > 0, "wd_tetrahedron needs p, q, s > 0");
  FamilyInstance f;
  f.family = "wd_tetrahedron";
  f.params = {{"p", p}, {"q", q}, {"s", s}};
  const std::vector<Vec3> pts{{p / 2, 0, s}, {-p / 2, 0, s}, {0, q / 2, 0}, {0, -q / 2, 0}};
  f.body = build_hull(pts);
  const double d = p * q / std::sqrt(p * p + q * q);
  const double z = s * q * q / (p * p + q * q);
  f.predicted["d"] = scalar(d, "p q / sqrt(p^2 + q^2) (rhombus incircle)");
  f.predicted["w"] = scalar(d, "w = d");
  f.predicted["circle_center"] = vec({0, 0, z}, "(0, 0, s q^2/(p^2 + q^2))");
  f.circle = Circle3{{0, 0, z}, d, Vec3::UnitZ()};
  return f;
}

RectangleCircle rectangle_circle_solve(double a, double h) {
  require(a > 1.0, "rectangle_circle_solve needs a > 1");
  require(h > 0.0, "rectangle_circle_solve needs h > 0");
  // z_A = a alpha + j a (1 - alpha), z_B = -2 beta - 2 j (1 - beta); both
  // constraints are affine in (alpha, beta): evaluate at three points.
  auto zA = [&](double al) { return a * al + J * a * (1.0 - al); };
  auto zB = [&](double be) { return -2.0 * be - 2.0 * J * (1.0 - be); };
  const cplx rot = std::polar(1.0, -std::numbers::pi / 3.0);
  auto residual = [&](double al, double be) {
    const cplx za = zA(al);
    const cplx zb = zB(be);
    return Eigen::Vector2d(za.imag() - std::conj(zb).imag(), ((za - zb) * rot).imag());
  };
  const Eigen::Vector2d r0 = residual(0, 0);
  Eigen::Matrix2d m;
  m.col(0) = residual(1, 0) - r0;
  m.col(1) = residual(0, 1) - r0;
  if (std::abs(m.determinant()) < 1e-14) throw GeometryError(ErrorKind::NoSolution, "singular rectangle constraints");
  const Eigen::Vector2d x = m.fullPivLu().solve(-r0);
  if (!(x[0] > 0 && x[0] < 1 && x[1] > 0 && x[1] < 1)) {
    throw GeometryError(ErrorKind::NoSolution, "rectangle parameters outside (0, 1)");
  }
  RectangleCircle out;
  out.alpha = x[0];
  out.beta = x[1];
  const cplx za = zA(out.alpha);
  const cplx zb = zB(out.beta);
  if (((za - zb) * rot).real() <= 0) throw GeometryError(ErrorKind::NoSolution, "rectangle diagonal points the wrong way");
  out.A = at(za, 0);
  out.A_prime = at(std::conj(za), 0);
  out.B = at(zb, -h);
  out.B_prime = at(std::conj(zb), -h);
  const Eigen::Vector2d r = residual(out.alpha, out.beta);
  out.residual_im = r[0];
  out.residual_arg = r[1];
  out.circle.center = 0.5 * (out.A + out.B);
  out.circle.diameter = (out.B - out.A).norm();
  out.circle.normal = (out.B - out.A).cross(out.A_prime - out.A).normalized();
  return out;
}

double PolytopeND::breadth(const Eigen::VectorXd& unit) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : vertices) {
    const double s = v.dot(unit);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

std::vector<Eigen::VectorXd> regular_simplex(int m, double scale) {
  require(m >= 1, "regular_simplex needs dimension >= 1");
  const int n = m + 1;
  // Centered standard basis of R^n lies in the hyperplane sum = 0; an
  // orthonormal basis of that hyperplane gives coordinates in R^m.
  std::vector<Eigen::VectorXd> centered;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Constant(n, -1.0 / n);
    e[i] += 1.0;
    centered.push_back(e);
  }
  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < n && static_cast<int>(basis.size()) < m; ++i) {
    Eigen::VectorXd v = centered[i];
    for (const auto& b : basis) v -= v.dot(b) * b;
    if (v.norm() > 1e-12) basis.push_back(v.normalized());
  }
  const double circum = centered[0].norm();
  std::vector<Eigen::VectorXd> out;
  for (const auto& c : centered) {
    Eigen::VectorXd p(m);
    for (int k = 0; k < m; ++k) p[k] = c.dot(basis[k]);
    out.push_back(p * (scale / circum));
  }
  return out;
}

FamilyInstanceND simplex_hull_nd(int n, double a, double h) {
  require(n >= 3, "simplex_hull_nd needs n >= 3");
  require(a > 1.0, "simplex_hull_nd needs a > 1");
  require(h > 0.0, "simplex_hull_nd needs h > 0");
  FamilyInstanceND f;
  f.family = "simplex_hull_nd";
  f.params = {{"n", static_cast<double>(n)}, {"a", a}, {"h", h}};
  f.body.dimension = n;
  for (const auto& v : regular_simplex(n - 1, a)) {
    Eigen::VectorXd p(n);
    p << v, 0.0;
    f.body.vertices.push_back(p);
  }
  for (const auto& v : regular_simplex(n - 1, 1.0 - n)) {
    Eigen::VectorXd p(n);
    p << v, -h;
    f.body.vertices.push_back(p);
  }
  const double nn = n;
  f.predicted["side"] = scalar(a * std::sqrt(2.0 * nn / (nn - 1.0)), "a sqrt(2n/(n-1))");
  f.predicted["width_limit"] = scalar(2.0 / steinhagen_constant(n), "2 / C(n)");
  f.predicted["sphere_diameter"] = scalar(2.0 * a / std::sqrt(1.0 + (a - 1.0) * (a - 1.0) / (nn * nn - 2.0 * nn)),
                                          "2a (1 + (a-1)^2/(n^2-2n))^(-1/2)");
  return f;
}

double steinhagen_constant(int n) {
  require(n >= 2, "steinhagen_constant needs n >= 2");
  if (n % 2 == 0) return 1.0 / std::sqrt(n - 1.0);
  return std::sqrt(n + 1.0) / n;
}

double width_estimate_nd(const PolytopeND& p, int samples, bool refine, std::uint64_t seed) {
  const int n = p.dimension;
  Rng rng(seed);
  std::vector<std::pair<double, Eigen::VectorXd>> best;
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd u(n);
    for (int k = 0; k < n; ++k) u[k] = rng.normal();
    if (u.norm() < 1e-12) continue;
    u.normalize();
    best.emplace_back(p.breadth(u), u);
  }
  if (best.empty()) throw GeometryError(ErrorKind::InvalidParam, "width_estimate_nd needs samples");
  std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  double w = best.front().first;
  if (!refine) return w;
  const int starts = std::min<int>(10, static_cast<int>(best.size()));
  for (int i = 0; i < starts; ++i) {
    auto f = [&](const Eigen::VectorXd& x) {
      const double nrm = x.norm();
      return nrm < 1e-12 ? std::numeric_limits<double>::max() : p.breadth(x / nrm);
    };
    const auto r = opt::nelder_mead(f, best[i].second, 0.05, 1e-12, 20000);
    w = std::min(w, r.value);
  }
  return w;
}

const std::map<std::string, std::vector<std::string>>& family_parameters() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"octahedron_iceberg", {"a", "h"}},
      {"seven_vertex_iceberg", {"a", "h"}},
      {"flat_tetrahedron", {"eps"}},
      {"five_vertex_flat", {"eps"}},
      {"skew_tetrahedron", {"eps"}},
      {"bevelled_cylinder", {"R", "m"}},
      {"wd_tetrahedron", {"p", "q", "s"}},
  };
  return table;
}

FamilyInstance make_family(const std::string& name, const std::map<std::string, double>& params) {
  const auto& table = family_parameters();
  const auto it = table.find(name);
  if (it == table.end()) throw GeometryError(ErrorKind::InvalidParam, "unknown family: " + name);
  std::vector<double> v;
  for (const auto& key : it->second) {
    const auto p = params.find(key);
    if (p == params.end()) throw GeometryError(ErrorKind::InvalidParam, name + " needs parameter " + key);
    v.push_back(p->second);
  }
  if (name == "octahedron_iceberg") return octahedron_iceberg(v[0], v[1]);
  if (name == "seven_vertex_iceberg") return seven_vertex_iceberg(v[0], v[1]);
  if (name == "flat_tetrahedron") return flat_tetrahedron(v[0]);
  if (name == "five_vertex_flat") return five_vertex_flat(v[0]);
  if (name == "skew_tetrahedron") return skew_tetrahedron(v[0]);
  if (name == "bevelled_cylinder") return bevelled_cylinder(v[0], static_cast<int>(std::lround(v[1])));
  return wd_tetrahedron(v[0], v[1], v[2]);
}

}  // namespace holdcert
