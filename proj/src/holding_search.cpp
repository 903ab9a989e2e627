#include "holdcert/holding.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holdcert {

HoldingReport certify_holding(const Polytope3& k, const Circle3& c, const CertifyOptions& options,
                              const Tolerances& tol) {
  HoldingReport rep;
  rep.non_penetration = !circle_interior_intersects(c, k, tol).intersects;
  rep.blocking = translation_block_certificate(k, c, tol, options.block_heights);
  rep.blocked_above = rep.blocking.blocked_above;
  rep.blocked_below = rep.blocking.blocked_below;
  try {
    rep.edge_lower_bound = nonintersecting_edge_bound(k).distance;
  } catch (const GeometryError&) {
    rep.edge_lower_bound = 0.0;
  }
  if (rep.non_penetration) rep.escape = escape_search(k, c, options.escape, tol);
  if (options.with_chain) {
    try {
      rep.chain = chain_certificate(k, c, {}, tol);
    } catch (const GeometryError&) {
    }
  }
  if (rep.escape && rep.escape->found()) {
    rep.verdict = Verdict::EscapeFound;
  } else if (rep.non_penetration && rep.blocked_above && rep.blocked_below && rep.escape) {
    rep.verdict = Verdict::CertifiedHoldingEvidence;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

namespace {

struct PlanePoint {
  Vec3 normal;
  double fraction;  // position between the two supporting planes, in (0, 1)
  double value;
};

class SliceObjective {
 public:
  SliceObjective(const Polytope3& k, const Tolerances& tol) : k_(k), tol_(tol), scale_(k.circumradius()) {}

  HalfSpace plane(const Vec3& n, double u) const {
    const double lo = -k_.support(-n);
    const double hi = k_.support(n);
    return {n, lo + u * (hi - lo)};
  }

  double operator()(const Vec3& n, double u) const {
    if (!(u > 1e-9 && u < 1.0 - 1e-9)) return 1e3 * scale_ * (1.0 + std::abs(u));
    try {
      const Slice s = slice_plane(k_, plane(n, u), tol_);
      return 2.0 * min_enclosing_circle(s.polygon.vertices()).radius;
    } catch (const GeometryError&) {
      return 1e3 * scale_;
    }
  }

 private:
  const Polytope3& k_;
  Tolerances tol_;
  double scale_;
};

// Local minima of the slice circumdiameter along one normal. Between
// consecutive vertex heights the circumradius is convex in the offset, so
// each piece has at most one interior minimum, found by Brent when the
// one-sided slopes at its ends point inward.
std::vector<PlanePoint> line_minima(const Polytope3& k, const SliceObjective& g, const Vec3& n, int heights) {
  const double lo = -k.support(-n);
  const double hi = k.support(n);
  constexpr double edge = 1e-8;
  std::vector<double> bps{edge, 1.0 - edge};
  for (int j = 1; j < heights; ++j) bps.push_back(static_cast<double>(j) / heights);
  if (hi > lo) {
    for (const Vec3& v : k.vertices()) {
      const double u = (n.dot(v) - lo) / (hi - lo);
      if (u > edge && u < 1.0 - edge) bps.push_back(u);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end(), [](double x, double y) { return y - x < 1e-12; }), bps.end());

  const std::size_t m = bps.size();
  std::vector<double> val(m), left(m), right(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double span = std::min(i > 0 ? bps[i] - bps[i - 1] : 1.0, i + 1 < m ? bps[i + 1] - bps[i] : 1.0);
    const double h = std::min(1e-7, 0.25 * span);
    val[i] = g(n, bps[i]);
    left[i] = i > 0 ? g(n, bps[i] - h) : std::numeric_limits<double>::infinity();
    right[i] = i + 1 < m ? g(n, bps[i] + h) : std::numeric_limits<double>::infinity();
  }
  std::vector<PlanePoint> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double slack = 1e-14 * std::max(1.0, val[i]);
    if (i > 0 && i + 1 < m && left[i] >= val[i] - slack && right[i] >= val[i] - slack) {
      out.push_back({n, bps[i], val[i]});
    }
    if (i + 1 < m && right[i] < val[i] - slack && left[i + 1] < val[i + 1] - 1e-14 * std::max(1.0, val[i + 1])) {
      const auto r = opt::brent_minimize([&](double u) { return g(n, u); }, bps[i], bps[i + 1]);
      out.push_back({n, r.x, r.value});
    }
  }
  return out;
}

std::vector<Vec3> hemisphere(int count) {
  std::vector<Vec3> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = (i + 0.5) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
  }
  return out;
}

PlanePoint polish(const SliceObjective& g, const PlanePoint& start) {
  const PlaneFrame f = PlaneFrame::from_normal(start.normal, Vec3::Zero());
  auto unpack = [&](const Eigen::VectorXd& x) { return (start.normal + x[0] * f.e1 + x[1] * f.e2).normalized(); };
  Eigen::VectorXd x0(3);
  x0 << 0.0, 0.0, start.fraction;
  const auto r = opt::nelder_mead([&](const Eigen::VectorXd& x) { return g(unpack(x), x[2]); }, x0, 0.02, 1e-10, 3000);
  if (r.value >= start.value) return start;
  return {unpack(r.x), r.x[2], r.value};
}

bool same_circle(const Circle3& a, const Circle3& b, double scale) {
  return (a.center - b.center).norm() < 1e-4 * scale && std::abs(a.normal.dot(b.normal)) > 1.0 - 1e-6 &&
         std::abs(a.diameter - b.diameter) < 1e-5 * scale;
}

// Circles whose diameter is the common perpendicular of two skew edges,
// with feet inside both edges and midpoint inside K. Such circles touch K
// only at the two feet when some rotation about the chord clears the body.
std::vector<Circle3> chord_circles(const Polytope3& k, const Tolerances& tol, int rotations) {
  const auto& v = k.vertices();
  const auto& edges = k.edges();
  const double scale = std::max(1.0, k.circumradius());
  std::vector<Circle3> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) continue;
      const Vec3 u = v[b] - v[a];
      const Vec3 w = v[d] - v[c];
      const Vec3 cr = u.cross(w);
      if (cr.norm() <= 1e-9 * u.norm() * w.norm()) continue;
      // Feet of the common perpendicular of the two lines.
      const Vec3 r = v[c] - v[a];
      const double s = r.cross(w).dot(cr) / cr.squaredNorm();
      const double t = r.cross(u).dot(cr) / cr.squaredNorm();
      if (!(s > 1e-9 && s < 1.0 - 1e-9 && t > 1e-9 && t < 1.0 - 1e-9)) continue;
      const Vec3 p = v[a] + s * u;
      const Vec3 q = v[c] + t * w;
      const double len = (q - p).norm();
      if (len <= 1e-6 * scale) continue;
      const Vec3 mid = 0.5 * (p + q);
      if (k.max_face_violation(mid) >= -tol.geom * scale) continue;
      const PlaneFrame f = PlaneFrame::from_normal((q - p) / len, mid);
      // Longest run of clear rotations, taken at its middle.
      std::vector<bool> clear(rotations);
      for (int m = 0; m < rotations; ++m) {
        const double th = std::numbers::pi * m / rotations;
        const Circle3 circ{mid, len, std::cos(th) * f.e1 + std::sin(th) * f.e2};
        clear[m] = !circle_interior_intersects(circ, k, tol).intersects;
      }
      int best_len = 0;
      int best_start = 0;
      for (int m = 0; m < rotations; ++m) {
        if (!clear[m] || (clear[(m + rotations - 1) % rotations] && m > 0)) continue;
        int n = 0;
        while (n < rotations && clear[(m + n) % rotations]) ++n;
        if (n > best_len) {
          best_len = n;
          best_start = m;
        }
      }
      if (best_len == 0 && clear[0]) {
        best_len = rotations;
      }
      if (best_len == 0) continue;
      const double th = std::numbers::pi * (best_start + 0.5 * (best_len - 1)) / rotations;
      out.push_back({mid, len, (std::cos(th) * f.e1 + std::sin(th) * f.e2).normalized()});
    }
  }
  return out;
}

}  // namespace

std::vector<HoldingCandidate> holding_candidates(const Polytope3& k, const HoldingSearchOptions& options,
                                                const Tolerances& tol) {
  const SliceObjective g(k, tol);
  const double scale = std::max(1.0, k.circumradius());

  // Horizontal planes first.
  std::vector<PlanePoint> found;
  for (const PlanePoint& p : line_minima(k, g, Vec3::UnitZ(), 200)) found.push_back(p);

  // All plane directions: coarse minima, then a joint polish of the best.
  std::vector<PlanePoint> starts = found;
  for (const Vec3& n : hemisphere(options.direction_count)) {
    for (const PlanePoint& p : line_minima(k, g, n, options.heights)) starts.push_back(p);
  }
  std::sort(starts.begin(), starts.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.value < b.value; });
  std::vector<PlanePoint> chosen;
  auto near_chosen = [&](const PlanePoint& p) {
    // Equal values at nearby normals are one flat family; one representative is enough.
    return std::any_of(chosen.begin(), chosen.end(), [&](const PlanePoint& q) {
      const double c = std::abs(p.normal.dot(q.normal));
      const bool close = c > std::cos(0.05) && std::abs(p.fraction - q.fraction) < 0.05;
      const bool flat = c > std::cos(0.3) && std::abs(p.value - q.value) <= 1e-6 * q.value;
      return close || flat;
    });
  };
  // Best start of each region of normals first, so that deep but narrow
  // families elsewhere cannot crowd out other directions.
  std::vector<Vec3> regions;
  for (const PlanePoint& p : starts) {
    if (static_cast<int>(chosen.size()) >= options.polish_starts) break;
    if (p.value <= 1e-6 * scale) continue;
    const bool seen = std::any_of(regions.begin(), regions.end(),
                                  [&](const Vec3& r) { return std::abs(r.dot(p.normal)) > std::cos(0.3); });
    if (seen) continue;
    regions.push_back(p.normal);
    if (!near_chosen(p)) chosen.push_back(p);
  }
  for (const PlanePoint& p : starts) {
    if (static_cast<int>(chosen.size()) >= options.polish_starts) break;
    if (p.value <= 1e-6 * scale || near_chosen(p)) continue;
    chosen.push_back(p);
  }
  for (const PlanePoint& p : chosen) found.push_back(polish(g, p));

  std::vector<HoldingCandidate> candidates;
  for (const PlanePoint& p : found) {
    Circle3 c;
    try {
      c = slice_circle(k, g.plane(p.normal, p.fraction), tol);
    } catch (const GeometryError&) {
      continue;
    }
    if (c.diameter <= 1e-6 * scale) continue;
    if (std::any_of(candidates.begin(), candidates.end(),
                    [&](const HoldingCandidate& h) { return same_circle(h.circle, c, scale); })) {
      continue;
    }
    if (circle_interior_intersects(c, k, tol).intersects) continue;
    candidates.push_back({c, translation_block_certificate(k, c, tol), false, c.diameter});
  }
  for (const Circle3& c : chord_circles(k, tol, 36)) {
    if (std::any_of(candidates.begin(), candidates.end(),
                    [&](const HoldingCandidate& h) { return same_circle(h.circle, c, scale); })) {
      continue;
    }
    candidates.push_back({c, translation_block_certificate(k, c, tol), false, c.diameter});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const HoldingCandidate& a, const HoldingCandidate& b) { return a.circle.diameter < b.circle.diameter; });
  return candidates;
}

HoldingSearchResult min_holding_circle(const Polytope3& k, const HoldingSearchOptions& options,
                                       const Tolerances& tol) {
  HoldingSearchResult result;
  std::vector<HoldingCandidate> candidates = holding_candidates(k, options, tol);

  CertifyOptions certify;
  certify.escape = options.escape;
  int attempts = 0;
  bool have = false;
  for (HoldingCandidate& cand : candidates) {
    if (!cand.blocking.blocked_above || !cand.blocking.blocked_below) continue;
    if (attempts >= options.max_certified_attempts) break;
    if (have && !options.estimate_delta) break;
    ++attempts;
    HoldingReport rep = certify_holding(k, cand.circle, certify, tol);
    if (rep.verdict != Verdict::CertifiedHoldingEvidence) continue;
    cand.certified = true;
    if (!have) {
      result.circle = cand.circle;
      result.report = rep;
      result.edge_lower_bound = rep.edge_lower_bound;
      have = true;
    }
    if (options.estimate_delta) {
      // Grow the circle in place up to the smaller blocking slice.
      const double bound = std::min(cand.blocking.max_diameter_above, cand.blocking.max_diameter_below);
      double best = cand.circle.diameter;
      for (const double f : {0.999, 0.75, 0.5, 0.25}) {
        Circle3 grown = cand.circle;
        grown.diameter = cand.circle.diameter + f * (bound - cand.circle.diameter);
        if (certify_holding(k, grown, certify, tol).verdict == Verdict::CertifiedHoldingEvidence) {
          best = grown.diameter;
          break;
        }
      }
      cand.grown_diameter = best;
      result.delta_estimate = std::max(result.delta_estimate.value_or(0.0), best);
    }
  }
  result.candidates = std::move(candidates);
  if (!have) throw GeometryError(ErrorKind::NotFound, "no candidate circle earned holding evidence");
  return result;
}

}  // namespace holdcert
