#ifndef CAROUSEL_SPHERE3_HPP
#define CAROUSEL_SPHERE3_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "carousel/support_hull.hpp"

namespace carousel {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Point3 operator-(Point3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Point3 operator/(Point3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(Point3, Point3) = default;
};

constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline double dist(Point3 a, Point3 b) { return norm(a - b); }
inline Point3 normalized(Point3 a) { return a / norm(a); }

struct Sphere3 {
  Point3 center;
  double radius = 0.0;
};

inline Sphere3 point_sphere(Point3 p) { return {p, 0.0}; }

/// max_i c_i . u + r_i for a unit vector u.
double support3(std::span<const Sphere3> gens, Point3 u);

/// support3(gens, u) - (target.center . u + target.radius).
double slack3(const Sphere3& target, std::span<const Sphere3> gens, Point3 u);

/// Vertices of the icosahedron subdivided `level` times and pushed onto the
/// unit sphere: 10 * 4^level + 2 directions.
std::vector<Point3> icosphere(int level);

/// Orthonormal frame of a plane: origin plus two unit, orthogonal axes.
struct Plane3 {
  Point3 origin;
  Point3 e1;
  Point3 e2;

  Point2 project(Point3 p) const { return {dot(p - origin, e1), dot(p - origin, e2)}; }
  Point3 lift(Point2 q) const { return origin + q.x * e1 + q.y * e2; }
};

/// Plane through three non-collinear points, origin at a, e1 along b - a.
Plane3 plane_through(Point3 a, Point3 b, Point3 c);

enum class ProjectionVerdict { Refuted, Inconclusive };

struct ProjectionCertificate {
  ProjectionVerdict verdict = ProjectionVerdict::Inconclusive;
  ContainmentResult planar;
  Plane3 plane;
};

struct Containment3Result {
  bool contained = false;
  double slack = 0.0;
  /// Unit direction with negative slack; present iff !contained.
  std::optional<Point3> witness_direction;
  /// Direction with the smallest slack found, always recorded.
  Point3 argmin_direction;
  std::optional<ProjectionCertificate> projection_certificate;
};

struct DirectionSearchOptions {
  int icosphere_level = 4;   // 2562 seed directions
  int refine_seeds = 20;
  int max_iterations = 400;
};

/// Decide target in conv(gens) by minimising the slack over the unit sphere.
/// A negative slack comes with its direction, which certifies non-inclusion;
/// a containment verdict is the outcome of the search.
Containment3Result sphere_in_hull3(const Sphere3& target, std::span<const Sphere3> gens,
                                   const Tolerance& tol = {},
                                   const DirectionSearchOptions& opts = {});

/// Project every sphere orthogonally to a circle (points to points) and run
/// the planar test. Only a planar refutation says anything about 3D.
ProjectionCertificate projection_reduction(const Sphere3& target, std::span<const Sphere3> gens,
                                           const Plane3& plane, const Tolerance& tol = {});

/// Alternating cube vertices (0,0,0), (s,s,0), (s,0,s), (0,s,s).
std::array<Point3, 4> tetrahedron_from_cube(double side);

struct AxisPoints {
  Point3 b;          // midpoint of [A0, A1]
  Point3 c;          // midpoint of [A2, A3]
  Point3 p_minus1;   // B + (C - B) / 3
  Point3 p0;         // B + 2 (C - B) / 3
};

AxisPoints axis_points(const std::array<Point3, 4>& a);

/// Signed distance from p to each face plane, positive inside.
std::array<double, 4> face_distances(const std::array<Point3, 4>& a, Point3 p);

/// Sphere S_k tested against conv of the other spheres plus the vertices
/// other than A_j.
struct SphereRefutation {
  int j = 0;
  int k = 0;
  Containment3Result result;
};

struct Example41Report {
  double side = 1.0;
  double r = 0.1;
  std::array<Point3, 4> vertices;
  AxisPoints axis;
  double min_face_distance = 0.0;
  std::vector<SphereRefutation> cases;   // 8 entries, j = 0..3, k = -1, 0

  bool all_refuted() const;
};

/// Two equal spheres on the trisection points of [B, C]. Throws
/// PreconditionRadius unless both lie strictly inside with margin eps_decision.
Example41Report example_4_1(double side, double r, const Tolerance& tol = {},
                            const DirectionSearchOptions& opts = {});

struct Example42Report {
  int t = 3;
  double side = 1.0;
  double arc_radius_factor = 10.0;
  std::array<Point3, 4> vertices;
  AxisPoints axis;
  Plane3 plane;                      // cross-section plane through A2, A3, B
  Point3 guide_center;
  double guide_radius = 0.0;
  std::vector<Sphere3> spheres;      // index i holds S_{i-1}
  double max_tangency_residual = 0.0;
  double min_interior_margin = 0.0;
  bool cross_section_non_nested = false;
  std::vector<SphereRefutation> cases;

  const Sphere3& sphere(int k) const { return spheres.at(static_cast<std::size_t>(k + 1)); }
  bool all_refuted() const;
};

/// t spheres with centres equally spaced on [P0, P_-1], radii fixed by
/// internal tangency to a large guide circle, as large as the tetrahedron
/// allows. Throws ConstructionFailed when no positive radii fit.
Example42Report example_4_2(int t, double arc_radius_factor = 10.0, double side = 1.0,
                            const Tolerance& tol = {}, const DirectionSearchOptions& opts = {});

}  // namespace carousel

#endif  // CAROUSEL_SPHERE3_HPP
