#include "carousel/geom.hpp"

#include <algorithm>
#include <string>

namespace carousel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FocusInsideOrOn: return "FocusInsideOrOn";
    case ErrorCode::DegenerateRadius: return "DegenerateRadius";
    case ErrorCode::EqualRadii: return "EqualRadii";
    case ErrorCode::NestedCircles: return "NestedCircles";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::EmptyGeneratorSet: return "EmptyGeneratorSet";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::PreconditionRadius: return "PreconditionRadius";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
  }
  return "Unknown";
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double polar_angle(Point2 v) { return normalize_angle(std::atan2(v.y, v.x)); }

void Tolerance::validate() const {
  if (!(eps_geom > 0.0) || !(eps_decision > 0.0) || !(eps_geom < eps_decision)) {
    throw Error(ErrorCode::InvalidArgument,
                "tolerances must satisfy 0 < eps_geom < eps_decision");
  }
}

Homothety AffineSimilarity::as_homothety() const {
  if (scale == 1.0) {
    throw Error(ErrorCode::InvalidArgument, "a translation has no homothety center");
  }
  return {offset / (1.0 - scale), scale};
}

AffineSimilarity compose(const AffineSimilarity& outer, const AffineSimilarity& inner) {
  return {outer.scale * inner.scale, outer.scale * inner.offset + outer.offset};
}

bool approx_equal(const AffineSimilarity& a, const AffineSimilarity& b, double eps) {
  auto close = [eps](double u, double v) {
    return std::abs(u - v) <= eps * std::max({1.0, std::abs(u), std::abs(v)});
  };
  return close(a.scale, b.scale) && close(a.offset.x, b.offset.x) &&
         close(a.offset.y, b.offset.y);
}

Point2 homothety_apply(const Homothety& h, Point2 x) {
  return (1.0 - h.ratio) * h.center + h.ratio * x;
}

Circle2 homothety_apply(const Homothety& h, const Circle2& c) {
  return {homothety_apply(h, c.center), std::abs(h.ratio) * c.radius};
}

ConjugateHomotheties homothety_conjugate(Point2 focus, double lambda, Point2 q, double mu) {
  if (lambda == 0.0 || mu == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "homothety ratios must be nonzero");
  }
  const Homothety h_f{focus, lambda};
  const Point2 r = homothety_apply(h_f, q);
  const auto f = AffineSimilarity::from(h_f);
  const auto lhs = compose(AffineSimilarity::from({r, mu}), f);
  const auto rhs = compose(f, AffineSimilarity::from({q, mu}));
  return {r, lhs, rhs};
}

std::pair<Point2, Point2> tangent_points_from_point(Point2 focus, const Circle2& c,
                                                    const Tolerance& tol) {
  if (!(c.radius > 0.0)) {
    throw Error(ErrorCode::DegenerateRadius, "tangent construction needs a positive radius");
  }
  const Point2 v = c.center - focus;
  const double d = norm(v);
  if (d <= c.radius + tol.eps_geom) {
    throw Error(ErrorCode::FocusInsideOrOn, "focus lies in the closed disk");
  }
  const Point2 u = v / d;
  const double tangent_sq = (d - c.radius) * (d + c.radius);
  const double along = tangent_sq / d;
  const double across = std::sqrt(tangent_sq) * c.radius / d;
  const Point2 base = focus + along * u;
  return {base + across * perp(u), base - across * perp(u)};
}

Point2 external_homothety_center(const Circle2& c1, const Circle2& c2) {
  if (!(c1.radius > 0.0) || !(c2.radius > 0.0)) {
    throw Error(ErrorCode::DegenerateRadius, "both circles need positive radii");
  }
  if (c1.radius == c2.radius) {
    throw Error(ErrorCode::EqualRadii, "external tangents are parallel");
  }
  if (dist(c1.center, c2.center) <= std::abs(c1.radius - c2.radius)) {
    throw Error(ErrorCode::NestedCircles, "one circle lies inside the other");
  }
  return (c2.radius * c1.center - c1.radius * c2.center) / (c2.radius - c1.radius);
}

namespace {

struct ReangleFrame {
  Point2 axis;       // unit vector focus -> center
  double d;          // |center - focus|
  double tangent;    // |T - focus|
  Point2 t1, t2;
};

ReangleFrame reangle_frame(Point2 focus, const Circle2& c) {
  const Point2 v = c.center - focus;
  const double d = norm(v);
  if (!(d > c.radius)) {
    throw Error(ErrorCode::FocusInsideOrOn, "focus of a round-edged angle must be outside the disk");
  }
  const Point2 u = v / d;
  const double tangent_sq = (d - c.radius) * (d + c.radius);
  const double along = tangent_sq / d;
  const double across = std::sqrt(tangent_sq) * c.radius / d;
  const Point2 base = focus + along * u;
  return {u, d, std::sqrt(tangent_sq), base + across * perp(u), base - across * perp(u)};
}

double ray_distance(Point2 p, Point2 origin, Point2 dir) {
  const double t = std::max(0.0, dot(p - origin, dir));
  return dist(p, origin + t * dir);
}

}  // namespace

bool reangle_contains(Point2 focus, const Circle2& c, Point2 x) {
  const ReangleFrame fr = reangle_frame(focus, c);
  const Point2 w = x - focus;
  const double wn = norm(w);
  if (wn == 0.0) return false;
  const double slack = 1e-12 * (wn + fr.d);
  // angle(w, axis) <= half-opening  <=>  w . axis >= |w| cos(half-opening)
  if (dot(w, fr.axis) < wn * (fr.tangent / fr.d) - slack) return false;
  return segment_distance(c.center, focus, x) <= c.radius + slack;
}

double reangle_signed_distance(Point2 focus, const Circle2& c, Point2 x) {
  const ReangleFrame fr = reangle_frame(focus, c);
  const Point2 leg1 = (fr.t1 - focus) / fr.tangent;
  const Point2 leg2 = (fr.t2 - focus) / fr.tangent;
  double to_boundary = std::min(ray_distance(x, fr.t1, leg1), ray_distance(x, fr.t2, leg2));

  // front arc: points of c seen from the center within acos(r/d) of the focus direction
  const Point2 rel = x - c.center;
  const double rn = norm(rel);
  const double half_span = std::acos(std::clamp(c.radius / fr.d, -1.0, 1.0));
  bool on_span = false;
  if (rn > 0.0) {
    const double cosang = dot(rel, -fr.axis) / rn;
    on_span = cosang >= std::cos(half_span);
  }
  const double arc_dist = on_span ? std::abs(rn - c.radius)
                                  : std::min(dist(x, fr.t1), dist(x, fr.t2));
  to_boundary = std::min(to_boundary, arc_dist);
  return reangle_contains(focus, c, x) ? -to_boundary : to_boundary;
}

int orientation(Point2 a, Point2 b, Point2 c, const Tolerance& tol) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= tol.eps_geom) return 0;
  return v > 0.0 ? 1 : -1;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len_sq = dot(ab, ab);
  if (len_sq == 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return dist(p, a + t * ab);
}

}  // namespace carousel
