#ifndef CAROUSEL_GEOM_HPP
#define CAROUSEL_GEOM_HPP

#include <cmath>
#include <numbers>
#include <utility>

#include "carousel/errors.hpp"

namespace carousel {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Unit vector at angle theta.
inline Point2 direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Angle of v in [0, 2pi).
double polar_angle(Point2 v);

/// Reduce an angle into [0, 2pi).
double normalize_angle(double theta);

/// Circle with center and radius >= 0; radius 0 is a point generator.
struct Circle2 {
  Point2 center;
  double radius = 0.0;

  friend constexpr bool operator==(const Circle2&, const Circle2&) = default;
};

inline Circle2 point_circle(Point2 p) { return {p, 0.0}; }

struct Tolerance {
  double eps_geom = 1e-9;
  double eps_decision = 1e-6;

  /// Throws InvalidArgument unless 0 < eps_geom < eps_decision.
  void validate() const;
};

/// X -> (1 - ratio) * center + ratio * X.
struct Homothety {
  Point2 center;
  double ratio = 1.0;
};

/// X -> scale * X + offset. Closed under composition; a homothety with
/// center P and ratio l is {l, (1 - l) P}.
struct AffineSimilarity {
  double scale = 1.0;
  Point2 offset;

  Point2 operator()(Point2 x) const { return scale * x + offset; }

  static AffineSimilarity from(const Homothety& h) { return {h.ratio, (1.0 - h.ratio) * h.center}; }

  bool is_translation() const { return scale == 1.0; }

  /// Fixed point of a non-translation map, i.e. its homothety center.
  Homothety as_homothety() const;
};

/// (outer o inner)(x) = outer(inner(x)).
AffineSimilarity compose(const AffineSimilarity& outer, const AffineSimilarity& inner);

bool approx_equal(const AffineSimilarity& a, const AffineSimilarity& b, double eps);

Point2 homothety_apply(const Homothety& h, Point2 x);

/// Image of a circle under a positive-ratio homothety.
Circle2 homothety_apply(const Homothety& h, const Circle2& c);

struct ConjugateHomotheties {
  Point2 image_center;     // R = h_{F,lambda}(Q)
  AffineSimilarity lhs;    // h_{R,mu} o h_{F,lambda}
  AffineSimilarity rhs;    // h_{F,lambda} o h_{Q,mu}
};

/// Both composition orders of the conjugation identity
/// h_{R,mu} o h_{F,lambda} = h_{F,lambda} o h_{Q,mu}, R = h_{F,lambda}(Q).
ConjugateHomotheties homothety_conjugate(Point2 focus, double lambda, Point2 q, double mu);

/// Tangent points on c of the two tangent lines through focus. The first is
/// the counterclockwise one as seen from focus.
std::pair<Point2, Point2> tangent_points_from_point(Point2 focus, const Circle2& c,
                                                    const Tolerance& tol = {});

/// Intersection of the external common tangents: the center F of the
/// positive homothety taking c1 onto c2.
Point2 external_homothety_center(const Circle2& c1, const Circle2& c2);

/// Membership in the round-edged angle with the given focus and spanning
/// circle: the tangent cone of c apexed at focus, minus the part in front of
/// the near arc. Closed region; the disk of c is included, the focus is not.
bool reangle_contains(Point2 focus, const Circle2& c, Point2 x);

/// Signed Euclidean distance from x to the boundary of the round-edged
/// angle, negative inside.
double reangle_signed_distance(Point2 focus, const Circle2& c, Point2 x);

/// Sign of (b - a) x (c - a); values with magnitude <= eps_geom count as 0.
int orientation(Point2 a, Point2 b, Point2 c, const Tolerance& tol = {});

/// Distance from p to the closed segment [a, b].
double segment_distance(Point2 p, Point2 a, Point2 b);

}  // namespace carousel

#endif  // CAROUSEL_GEOM_HPP
