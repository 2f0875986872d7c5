#include "carousel/support_hull.hpp"

#include <algorithm>
#include <limits>

namespace carousel {

GeneratorSet::GeneratorSet(std::vector<Circle2> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw Error(ErrorCode::EmptyGeneratorSet, "generator set must be nonempty");
  }
  for (const Circle2& c : generators_) {
    if (!(c.radius >= 0.0) || !is_finite(c.center) || !std::isfinite(c.radius)) {
      throw Error(ErrorCode::InvalidArgument, "generators need finite data and radius >= 0");
    }
  }
}

double support(const GeneratorSet& gens, double theta) {
  const Point2 u = direction(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (const Circle2& g : gens.circles()) best = std::max(best, dot(g.center, u) + g.radius);
  return best;
}

ArcInterval coverage_arc(const Circle2& g, const Circle2& target) {
  const Point2 v = g.center - target.center;
  const double d = norm(v);
  const double need = target.radius - g.radius;
  if (d == 0.0) return need <= 0.0 ? ArcInterval::full() : ArcInterval::empty();
  if (need <= -d) return ArcInterval::full();
  if (need > d) return ArcInterval::empty();
  const double phi = polar_angle(v);
  const double alpha = std::acos(need / d);
  return ArcInterval::range(phi - alpha, phi + alpha);
}

namespace {

// max_i (c_i - t) . u + (r_i - R): translation-free form of the slack.
double slack_at(const Circle2& target, const GeneratorSet& gens, double theta) {
  const Point2 u = direction(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (const Circle2& g : gens.circles()) {
    best = std::max(best, dot(g.center - target.center, u) + (g.radius - target.radius));
  }
  return best;
}

// Angles where n . u(theta) == rhs.
void push_level_set(std::vector<double>& out, Point2 n, double rhs) {
  const double d = norm(n);
  if (d == 0.0 || std::abs(rhs) > d) return;
  const double phi = polar_angle(n);
  const double alpha = std::acos(std::clamp(rhs / d, -1.0, 1.0));
  out.push_back(normalize_angle(phi - alpha));
  out.push_back(normalize_angle(phi + alpha));
}

bool strictly_inside_gap(const AngularGap& gap, double theta) {
  const double offset = normalize_angle(theta - gap.lo);
  return offset > 0.0 && offset < gap.width();
}

}  // namespace

std::vector<double> critical_angles(const Circle2& target, const GeneratorSet& gens) {
  std::vector<double> out{0.0};
  const auto circles = gens.circles();
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Point2 a = circles[i].center - target.center;
    if (norm(a) > 0.0) out.push_back(normalize_angle(polar_angle(a) + std::numbers::pi));
    push_level_set(out, a, target.radius - circles[i].radius);
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      push_level_set(out, circles[i].center - circles[j].center,
                     circles[j].radius - circles[i].radius);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ContainmentResult circle_in_hull(const Circle2& target, const GeneratorSet& gens,
                                 const Tolerance& tol) {
  ContainmentResult res;
  const std::vector<double> candidates = critical_angles(target, gens);
  res.slack = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    const double s = slack_at(target, gens, theta);
    if (s < res.slack) {
      res.slack = s;
      res.argmin_direction = theta;
    }
  }
  res.contained = res.slack >= -tol.eps_decision;
  if (!res.contained) res.witness_direction = res.argmin_direction;

  ArcCover cover;
  for (const Circle2& g : gens.circles()) cover.add(coverage_arc(g, target));
  res.uncovered = cover.gaps();
  res.arc_cover_complete = true;
  for (const AngularGap& gap : res.uncovered) {
    double worst = slack_at(target, gens, gap.midpoint());
    for (double theta : candidates) {
      if (strictly_inside_gap(gap, theta)) worst = std::min(worst, slack_at(target, gens, theta));
    }
    if (worst < -tol.eps_decision) {
      res.arc_cover_complete = false;
      break;
    }
  }
  return res;
}

double min_slack(const Circle2& target, const GeneratorSet& gens) {
  return circle_in_hull(target, gens).slack;
}

namespace {

bool angle_in(double theta, double begin, double end) {
  return normalize_angle(theta - begin) <= end - begin;
}

void check_two_dimensional(const GeneratorSet& gens, const Tolerance& tol) {
  const auto circles = gens.circles();
  for (const Circle2& c : circles) {
    if (c.radius > tol.eps_geom) return;
  }
  std::size_t a = 0, b = 0;
  double far = 0.0;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const double d = dist(circles[i].center, circles[j].center);
      if (d > far) {
        far = d;
        a = i;
        b = j;
      }
    }
  }
  if (far <= tol.eps_geom) throw Error(ErrorCode::DegenerateHull, "hull is a single point");
  const Point2 axis = (circles[b].center - circles[a].center) / far;
  for (const Circle2& c : circles) {
    if (std::abs(cross(axis, c.center - circles[a].center)) > tol.eps_geom) return;
  }
  throw Error(ErrorCode::DegenerateHull, "hull is a segment");
}

}  // namespace

HullBoundary hull_boundary(const GeneratorSet& gens, const Tolerance& tol) {
  check_two_dimensional(gens, tol);
  const auto circles = gens.circles();

  std::vector<double> cuts{0.0};
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      push_level_set(cuts, circles[i].center - circles[j].center,
                     circles[j].radius - circles[i].radius);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Run {
    std::size_t gen;
    double begin, end;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = i + 1 < cuts.size() ? cuts[i + 1] : kTwoPi;
    if (hi <= lo) continue;
    const Point2 u = direction(0.5 * (lo + hi));
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < circles.size(); ++g) {
      const double v = dot(circles[g].center, u) + circles[g].radius;
      if (v > best_value) {
        best_value = v;
        best = g;
      }
    }
    if (!runs.empty() && runs.back().gen == best) {
      runs.back().end = hi;
    } else {
      runs.push_back({best, lo, hi});
    }
  }
  if (runs.size() > 1 && runs.front().gen == runs.back().gen) {
    runs.front().begin = runs.back().begin - kTwoPi;
    runs.pop_back();
  }

  HullBoundary hb;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Run& run = runs[r];
    const Circle2& c = circles[run.gen];
    hb.active_sequence.push_back(run.gen);
    hb.total_turning += run.end - run.begin;
    if (c.radius > 0.0) {
      HullPiece arc;
      arc.kind = HullPiece::Kind::Arc;
      arc.from = arc.to = run.gen;
      arc.circle = c;
      arc.theta_begin = normalize_angle(run.begin);
      arc.theta_end = arc.theta_begin + (run.end - run.begin);
      arc.begin = c.center + c.radius * direction(run.begin);
      arc.end = c.center + c.radius * direction(run.end);
      hb.pieces.push_back(arc);
    }
    if (runs.size() == 1) break;
    const Run& next = runs[(r + 1) % runs.size()];
    const Circle2& n = circles[next.gen];
    const Point2 u = direction(run.end);
    HullPiece seg;
    seg.kind = HullPiece::Kind::Segment;
    seg.from = run.gen;
    seg.to = next.gen;
    seg.begin = c.center + c.radius * u;
    seg.end = n.center + n.radius * u;
    seg.theta_begin = seg.theta_end = normalize_angle(run.end);
    if (dist(seg.begin, seg.end) > tol.eps_geom) hb.pieces.push_back(seg);
  }

  std::vector<bool> used(circles.size(), false);
  for (std::size_t g : hb.active_sequence) used[g] = true;
  for (std::size_t g = 0; g < circles.size(); ++g) {
    if (!used[g]) hb.omitted.push_back(g);
  }
  return hb;
}

double HullBoundary::support(double theta) const {
  const Point2 u = direction(theta);
  double best = -std::numeric_limits<double>::infinity();
  for (const HullPiece& p : pieces) {
    if (p.kind == HullPiece::Kind::Arc && angle_in(theta, p.theta_begin, p.theta_end)) {
      best = std::max(best, dot(p.circle.center, u) + p.circle.radius);
    }
    best = std::max({best, dot(p.begin, u), dot(p.end, u)});
  }
  return best;
}

double HullBoundary::area() const {
  double twice = 0.0;
  for (const HullPiece& p : pieces) {
    if (p.kind == HullPiece::Kind::Segment) {
      twice += cross(p.begin, p.end);
    } else {
      const double r = p.circle.radius;
      const Point2 c = p.circle.center;
      const double a = p.theta_begin, b = p.theta_end;
      twice += r * c.x * (std::sin(b) - std::sin(a)) - r * c.y * (std::cos(b) - std::cos(a)) +
               r * r * (b - a);
    }
  }
  return 0.5 * twice;
}

double HullBoundary::max_chain_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const HullPiece& next = pieces[(i + 1) % pieces.size()];
    gap = std::max(gap, dist(pieces[i].end, next.begin));
  }
  return gap;
}

}  // namespace carousel
