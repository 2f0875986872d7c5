#ifndef CAROUSEL_SUPPORT_HULL_HPP
#define CAROUSEL_SUPPORT_HULL_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "carousel/arc_cover.hpp"
#include "carousel/geom.hpp"

namespace carousel {

/// Nonempty finite set of circles (radius 0 allowed) whose convex hull is the
/// region of interest.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<Circle2> generators);
  GeneratorSet(std::initializer_list<Circle2> generators)
      : GeneratorSet(std::vector<Circle2>(generators)) {}

  std::span<const Circle2> circles() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const Circle2& operator[](std::size_t i) const { return generators_[i]; }

 private:
  std::vector<Circle2> generators_;
};

/// h(theta) = max_i center_i . u(theta) + radius_i.
double support(const GeneratorSet& gens, double theta);

/// Directions in which g alone reaches at least as far as target:
/// {theta : (g.center - target.center) . u(theta) >= target.radius - g.radius}.
ArcInterval coverage_arc(const Circle2& g, const Circle2& target);

struct ContainmentResult {
  bool contained = false;
  /// min over theta of support(gens) - support(target); >= 0 iff contained
  /// in exact arithmetic.
  double slack = 0.0;
  /// Direction attaining the minimum slack; present iff !contained.
  std::optional<double> witness_direction;
  /// Direction attaining the minimum slack, always recorded.
  double argmin_direction = 0.0;
  /// Whether the per-generator arcs cover every direction, after tolerating
  /// gaps whose worst slack is within eps_decision.
  bool arc_cover_complete = false;
  /// Gaps left by the raw arc union.
  std::vector<AngularGap> uncovered;
};

/// Is the closed disk of target inside the convex hull of gens?
ContainmentResult circle_in_hull(const Circle2& target, const GeneratorSet& gens,
                                 const Tolerance& tol = {});

inline ContainmentResult point_in_hull(Point2 p, const GeneratorSet& gens,
                                       const Tolerance& tol = {}) {
  return circle_in_hull(point_circle(p), gens, tol);
}

/// Slack of circle_in_hull; strictly positive iff the target lies in the
/// interior of the hull.
double min_slack(const Circle2& target, const GeneratorSet& gens);

/// Every angle where the slack function can attain a local minimum: the
/// pairwise switch angles of the generator sinusoids, the antipodal angle of
/// each shifted generator, and the coverage-arc endpoints.
std::vector<double> critical_angles(const Circle2& target, const GeneratorSet& gens);

/// One piece of a hull boundary. Arcs run counterclockwise over outward
/// normal angles [theta_begin, theta_end] (theta_end may exceed 2pi); a
/// segment has a single outward normal theta_begin == theta_end.
struct HullPiece {
  enum class Kind { Arc, Segment };

  Kind kind = Kind::Arc;
  std::size_t from = 0;   // generator owning the arc, or the segment's start
  std::size_t to = 0;     // generator at the segment's end (== from for arcs)
  Point2 begin;
  Point2 end;
  double theta_begin = 0.0;
  double theta_end = 0.0;
  Circle2 circle;         // owning circle for arcs

  bool is_full_circle() const { return kind == Kind::Arc && theta_end - theta_begin >= kTwoPi; }
};

struct HullBoundary {
  std::vector<HullPiece> pieces;
  /// Generator index active on each maximal run of normal angles, in
  /// counterclockwise order starting from the run containing angle 0.
  std::vector<std::size_t> active_sequence;
  /// Generators that never attain the support function.
  std::vector<std::size_t> omitted;
  double total_turning = 0.0;

  double support(double theta) const;
  double area() const;
  /// Largest gap between the end of a piece and the start of the next.
  double max_chain_gap() const;
};

/// Boundary of conv(gens) as a counterclockwise chain of arcs and tangent
/// segments. Throws DegenerateHull if the hull has empty interior.
HullBoundary hull_boundary(const GeneratorSet& gens, const Tolerance& tol = {});

}  // namespace carousel

#endif  // CAROUSEL_SUPPORT_HULL_HPP
