#include "carousel/sphere3.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

namespace carousel {

double support3(std::span<const Sphere3> gens, Point3 u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Sphere3& g : gens) best = std::max(best, dot(g.center, u) + g.radius);
  return best;
}

double slack3(const Sphere3& target, std::span<const Sphere3> gens, Point3 u) {
  return support3(gens, u) - (dot(target.center, u) + target.radius);
}

std::vector<Point3> icosphere(int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "icosphere level must be >= 0");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point3> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (Point3& v : verts) v = normalized(v);
  using Face = std::array<std::size_t, 3>;
  std::vector<Face> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      const auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      verts.push_back(normalized(verts[a] + verts[b]));
      midpoints.emplace(key, verts.size() - 1);
      return verts.size() - 1;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const std::size_t ab = midpoint(f[0], f[1]);
      const std::size_t bc = midpoint(f[1], f[2]);
      const std::size_t ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return verts;
}

Plane3 plane_through(Point3 a, Point3 b, Point3 c) {
  const Point3 u = b - a;
  const Point3 v = c - a;
  if (norm(u) == 0.0 || norm(cross(u, v)) <= 1e-12 * norm(u) * norm(v)) {
    throw Error(ErrorCode::DegenerateBasis, "points do not span a plane");
  }
  const Point3 e1 = normalized(u);
  const Point3 e2 = normalized(v - dot(v, e1) * e1);
  return {a, e1, e2};
}

namespace {

// Shifted linear terms: slack(u) = max_i a_i . u + b_i.
struct SlackTerms {
  std::vector<Point3> a;
  std::vector<double> b;

  SlackTerms(const Sphere3& target, std::span<const Sphere3> gens) {
    for (const Sphere3& g : gens) {
      a.push_back(g.center - target.center);
      b.push_back(g.radius - target.radius);
    }
  }

  double value(std::size_t i, Point3 u) const { return dot(a[i], u) + b[i]; }

  double operator()(Point3 u) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, value(i, u));
    return best;
  }

  double scale() const {
    double s = 1.0;
    for (const Point3& v : a) s = std::max(s, norm(v));
    return s;
  }
};

bool lex_less(Point3 p, Point3 q) { return std::tie(p.x, p.y, p.z) < std::tie(q.x, q.y, q.z); }

// Minimum-norm point of the convex hull of a few vectors, by enumerating
// the faces of dimension <= 2 (enough for vectors in a tangent plane).
Point3 min_norm_point(const std::vector<Point3>& g) {
  Point3 best = g.front();
  double best_n = dot(best, best);
  auto consider = [&](Point3 p) {
    const double n = dot(p, p);
    if (n < best_n) {
      best_n = n;
      best = p;
    }
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    consider(g[i]);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Point3 e = g[j] - g[i];
      const double ee = dot(e, e);
      if (ee > 0.0) consider(g[i] + std::clamp(-dot(g[i], e) / ee, 0.0, 1.0) * e);
      for (std::size_t k = j + 1; k < g.size(); ++k) {
        const Point3 f = g[k] - g[i];
        const double ef = dot(e, f), ff = dot(f, f);
        const double det = ee * ff - ef * ef;
        if (det <= 1e-30 * (ee * ff + 1e-300)) continue;
        const double rhs_e = -dot(g[i], e), rhs_f = -dot(g[i], f);
        const double s = (rhs_e * ff - rhs_f * ef) / det;
        const double t = (rhs_f * ee - rhs_e * ef) / det;
        if (s >= 0.0 && t >= 0.0 && s + t <= 1.0) consider(g[i] + s * e + t * f);
      }
    }
  }
  return best;
}

// Closed-form stationary points of the slack restricted to a fixed active
// set of one, two or three terms.
void active_set_candidates(const SlackTerms& terms, const std::vector<std::size_t>& active,
                           std::vector<Point3>& out) {
  for (std::size_t i : active) {
    if (norm(terms.a[i]) > 0.0) out.push_back(-normalized(terms.a[i]));
  }
  for (std::size_t x = 0; x < active.size(); ++x) {
    const std::size_t i = active[x];
    for (std::size_t y = x + 1; y < active.size(); ++y) {
      const std::size_t j = active[y];
      const Point3 n = terms.a[i] - terms.a[j];
      const double nn = norm(n);
      if (nn == 0.0) continue;
      const double h = (terms.b[j] - terms.b[i]) / nn;
      if (std::abs(h) > 1.0) continue;
      const Point3 nh = n / nn;
      Point3 p = terms.a[i] - dot(terms.a[i], nh) * nh;
      if (norm(p) < 1e-15) {
        p = std::abs(nh.x) < 0.9 ? cross(nh, Point3{1, 0, 0}) : cross(nh, Point3{0, 1, 0});
      }
      out.push_back(h * nh - std::sqrt(1.0 - h * h) * normalized(p));

      for (std::size_t z = y + 1; z < active.size(); ++z) {
        const std::size_t l = active[z];
        const Point3 n2 = terms.a[i] - terms.a[l];
        const double c1 = terms.b[j] - terms.b[i];
        const double c2 = terms.b[l] - terms.b[i];
        const Point3 m = cross(n, n2);
        const double mm = dot(m, m);
        if (mm <= 1e-24) continue;
        const double g11 = dot(n, n), g12 = dot(n, n2), g22 = dot(n2, n2);
        const double det = g11 * g22 - g12 * g12;
        const double alpha = (c1 * g22 - c2 * g12) / det;
        const double beta = (c2 * g11 - c1 * g12) / det;
        const Point3 u0 = alpha * n + beta * n2;
        const double rest = 1.0 - dot(u0, u0);
        if (rest < 0.0) continue;
        const double t = std::sqrt(rest / mm);
        out.push_back(u0 + t * m);
        out.push_back(u0 - t * m);
      }
    }
  }
}

// Golden-section search of phi on [0, hi].
template <class F>
double golden_min(F&& phi, double hi) {
  constexpr double kInv = 0.6180339887498949;
  double lo = 0.0;
  double x1 = hi - kInv * (hi - lo), x2 = lo + kInv * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  while (hi - lo > 1e-15) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInv * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInv * (hi - lo);
      f2 = phi(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

std::vector<std::size_t> active_terms(const SlackTerms& terms, Point3 u, double band) {
  const double top = terms(u);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < terms.a.size(); ++i) {
    if (terms.value(i, u) >= top - band) idx.push_back(i);
  }
  if (idx.size() > 6) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
      return terms.value(p, u) > terms.value(q, u);
    });
    idx.resize(6);
  }
  return idx;
}

// Epsilon-steepest descent on the sphere with a golden-section line search
// along great circles, then an exact solve on the final active set.
Point3 refine(const SlackTerms& terms, Point3 u, int max_iterations) {
  const double scale = terms.scale();
  double fu = terms(u);
  double eps = 1e-2 * scale;
  double reach = 0.5;
  for (int it = 0; it < max_iterations && eps > 1e-13 * scale; ++it) {
    const auto active = active_terms(terms, u, eps);
    std::vector<Point3> grads;
    for (std::size_t i : active) grads.push_back(terms.a[i] - dot(terms.a[i], u) * u);
    const Point3 d = min_norm_point(grads);
    const double dn = norm(d);
    if (dn <= 1e-13 * scale) {
      eps *= 0.1;
      continue;
    }
    const Point3 step = -(d / dn);
    auto along = [&](double s) { return std::cos(s) * u + std::sin(s) * step; };
    const double s = golden_min([&](double x) { return terms(along(x)); }, reach);
    const Point3 cand = normalized(along(s));
    const double fc = terms(cand);
    if (fc < fu) {
      u = cand;
      fu = fc;
      reach = std::clamp(4.0 * s, 1e-9, 0.5);
    } else {
      eps *= 0.1;
      reach = 0.5;
    }
  }

  std::vector<Point3> cands;
  active_set_candidates(terms, active_terms(terms, u, 1e-6 * scale), cands);
  for (const Point3& c : cands) {
    const Point3 cu = normalized(c);
    const double fc = terms(cu);
    if (fc < fu) {
      u = cu;
      fu = fc;
    }
  }
  return u;
}

}  // namespace

Containment3Result sphere_in_hull3(const Sphere3& target, std::span<const Sphere3> gens,
                                   const Tolerance& tol, const DirectionSearchOptions& opts) {
  if (gens.empty()) throw Error(ErrorCode::EmptyGeneratorSet, "generator set must be nonempty");
  const SlackTerms terms(target, gens);

  const std::vector<Point3> seeds = icosphere(opts.icosphere_level);
  std::vector<double> values(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) values[i] = terms(seeds[i]);
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts.refine_seeds)), seeds.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t p, std::size_t q) {
                      if (values[p] != values[q]) return values[p] < values[q];
                      return lex_less(seeds[p], seeds[q]);
                    });

  Containment3Result res;
  res.slack = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < keep; ++s) {
    const Point3 u = refine(terms, seeds[order[s]], opts.max_iterations);
    const double v = terms(u);
    if (v < res.slack || (v == res.slack && lex_less(u, res.argmin_direction))) {
      res.slack = v;
      res.argmin_direction = u;
    }
  }
  res.contained = res.slack >= -tol.eps_decision;
  if (!res.contained) res.witness_direction = res.argmin_direction;
  return res;
}

ProjectionCertificate projection_reduction(const Sphere3& target, std::span<const Sphere3> gens,
                                           const Plane3& plane, const Tolerance& tol) {
  const double unit_err = std::max(std::abs(norm(plane.e1) - 1.0), std::abs(norm(plane.e2) - 1.0));
  if (unit_err > 1e-9 || std::abs(dot(plane.e1, plane.e2)) > 1e-9) {
    throw Error(ErrorCode::DegenerateBasis, "plane axes must be orthonormal");
  }
  std::vector<Circle2> circles;
  for (const Sphere3& g : gens) circles.push_back({plane.project(g.center), g.radius});
  ProjectionCertificate cert;
  cert.plane = plane;
  cert.planar = circle_in_hull({plane.project(target.center), target.radius},
                               GeneratorSet(std::move(circles)), tol);
  cert.verdict = cert.planar.contained ? ProjectionVerdict::Inconclusive : ProjectionVerdict::Refuted;
  return cert;
}

std::array<Point3, 4> tetrahedron_from_cube(double side) {
  if (!(side > 0.0)) throw Error(ErrorCode::InvalidArgument, "cube side must be positive");
  return {Point3{0, 0, 0}, Point3{side, side, 0}, Point3{side, 0, side}, Point3{0, side, side}};
}

AxisPoints axis_points(const std::array<Point3, 4>& a) {
  AxisPoints p;
  p.b = 0.5 * (a[0] + a[1]);
  p.c = 0.5 * (a[2] + a[3]);
  p.p_minus1 = p.b + (1.0 / 3.0) * (p.c - p.b);
  p.p0 = p.b + (2.0 / 3.0) * (p.c - p.b);
  return p;
}

std::array<double, 4> face_distances(const std::array<Point3, 4>& a, Point3 p) {
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point3 q0 = a[(i + 1) % 4], q1 = a[(i + 2) % 4], q2 = a[(i + 3) % 4];
    Point3 n = normalized(cross(q1 - q0, q2 - q0));
    if (dot(a[i] - q0, n) < 0.0) n = -n;
    out[i] = dot(p - q0, n);
  }
  return out;
}

namespace {

double min_face_distance(const std::array<Point3, 4>& a, Point3 p) {
  const auto d = face_distances(a, p);
  return *std::min_element(d.begin(), d.end());
}

std::vector<Sphere3> vertices_except(const std::array<Point3, 4>& a, int j) {
  std::vector<Sphere3> out;
  for (int i = 0; i < 4; ++i) {
    if (i != j) out.push_back(point_sphere(a[static_cast<std::size_t>(i)]));
  }
  return out;
}

bool refuted(const std::vector<SphereRefutation>& cases) {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const SphereRefutation& c) {
    return !c.result.contained && c.result.witness_direction.has_value() && c.result.slack < 0.0;
  });
}

}  // namespace

bool Example41Report::all_refuted() const { return refuted(cases); }
bool Example42Report::all_refuted() const { return refuted(cases); }

Example41Report example_4_1(double side, double r, const Tolerance& tol,
                            const DirectionSearchOptions& opts) {
  Example41Report rep;
  rep.side = side;
  rep.r = r;
  rep.vertices = tetrahedron_from_cube(side);
  rep.axis = axis_points(rep.vertices);
  rep.min_face_distance = std::min(min_face_distance(rep.vertices, rep.axis.p_minus1),
                                   min_face_distance(rep.vertices, rep.axis.p0));
  if (!(r > 0.0) || rep.min_face_distance < r + tol.eps_decision) {
    throw Error(ErrorCode::PreconditionRadius, "spheres must lie strictly inside the tetrahedron");
  }
  const std::array<Sphere3, 2> s = {Sphere3{rep.axis.p_minus1, r}, Sphere3{rep.axis.p0, r}};
  const auto& a = rep.vertices;
  // Planes through the axis [B, C] and the pair of vertices it bisects.
  const Plane3 through_a2a3 = plane_through(rep.axis.b, a[2], a[3]);
  const Plane3 through_a0a1 = plane_through(rep.axis.c, a[0], a[1]);
  for (int j = 0; j < 4; ++j) {
    for (int k = -1; k <= 0; ++k) {
      const Sphere3& target = s[static_cast<std::size_t>(-1 - k + 1)];
      std::vector<Sphere3> gens{s[static_cast<std::size_t>(k + 1)]};
      for (const Sphere3& v : vertices_except(a, j)) gens.push_back(v);
      SphereRefutation c{j, k, sphere_in_hull3(target, gens, tol, opts)};
      c.result.projection_certificate =
          projection_reduction(target, gens, j >= 2 ? through_a2a3 : through_a0a1, tol);
      rep.cases.push_back(std::move(c));
    }
  }
  return rep;
}

Example42Report example_4_2(int t, double arc_radius_factor, double side, const Tolerance& tol,
                            const DirectionSearchOptions& opts) {
  if (t < 3) throw Error(ErrorCode::InvalidArgument, "need t >= 3");
  if (!(arc_radius_factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "arc radius factor must be positive");
  Example42Report rep;
  rep.t = t;
  rep.side = side;
  rep.arc_radius_factor = arc_radius_factor;
  rep.vertices = tetrahedron_from_cube(side);
  rep.axis = axis_points(rep.vertices);
  const auto& a = rep.vertices;

  const Point3 mid = 0.5 * (rep.axis.b + rep.axis.c);
  const Point3 along = normalized(rep.axis.c - rep.axis.b);
  const Point3 toward_a3 = a[3] - mid - dot(a[3] - mid, along) * along;
  rep.plane = {mid, along, normalized(toward_a3)};
  const double offset = arc_radius_factor * dist(rep.axis.b, rep.axis.c);
  rep.guide_center = mid - offset * rep.plane.e2;

  std::vector<Point3> centers{rep.axis.p_minus1, rep.axis.p0};
  for (int i = 1; i <= t - 2; ++i) {
    centers.push_back(rep.axis.p0 + (static_cast<double>(i) / (t - 1)) * (rep.axis.p_minus1 - rep.axis.p0));
  }
  // radius_i = rho - sag_i keeps every circle internally tangent to the
  // guide circle of radius offset + rho; rho is as large as interiority allows.
  std::vector<double> sag, room;
  for (const Point3& p : centers) {
    const double s = dot(p - mid, along);
    sag.push_back(s * s / (std::hypot(offset, s) + offset));
    room.push_back(min_face_distance(a, p));
  }
  double rho = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) rho = std::min(rho, room[i] + sag[i]);
  rho -= tol.eps_decision;
  rep.guide_radius = offset + rho;
  rep.min_interior_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double r = rho - sag[i];
    if (!(r > 0.0)) throw Error(ErrorCode::ConstructionFailed, "no positive radii fit inside the tetrahedron");
    rep.spheres.push_back({centers[i], r});
    rep.max_tangency_residual = std::max(
        rep.max_tangency_residual, std::abs(dist(rep.guide_center, centers[i]) + r - rep.guide_radius));
    rep.min_interior_margin = std::min(rep.min_interior_margin, room[i] - r);
  }

  rep.cross_section_non_nested = true;
  for (std::size_t i = 0; i < rep.spheres.size(); ++i) {
    for (std::size_t k = i + 1; k < rep.spheres.size(); ++k) {
      const double d = dist(rep.plane.project(rep.spheres[i].center), rep.plane.project(rep.spheres[k].center));
      if (!(d > std::abs(rep.spheres[i].radius - rep.spheres[k].radius))) rep.cross_section_non_nested = false;
    }
  }

  for (int j = 0; j < 4; ++j) {
    for (int k = -1; k <= t - 2; ++k) {
      std::vector<Sphere3> gens;
      for (int m = -1; m <= t - 2; ++m) {
        if (m != k) gens.push_back(rep.sphere(m));
      }
      for (const Sphere3& v : vertices_except(a, j)) gens.push_back(v);
      rep.cases.push_back({j, k, sphere_in_hull3(rep.sphere(k), gens, tol, opts)});
    }
  }
  return rep;
}

}  // namespace carousel
