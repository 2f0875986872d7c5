#include "carousel/witness.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "carousel/rng.hpp"

namespace carousel {

std::string_view to_string(Tangency t) {
  switch (t) {
    case Tangency::NoneAtOne: return "NONE_AT_ONE";
    case Tangency::NoneAtZero: return "NONE_AT_ZERO";
    case Tangency::Leg: return "LEG";
    case Tangency::FrontArc: return "FRONT_ARC";
    case Tangency::BaseSide: return "BASE_SIDE";
  }
  return "UNKNOWN";
}

namespace {

void check_indices(int j, int k) {
  if (j < 0 || j > 2 || k < 0 || k > 1) {
    throw Error(ErrorCode::InvalidArgument, "need j in {0,1,2} and k in {0,1}");
  }
}

std::vector<Circle2> others(const std::array<Circle2, 3>& c, int j) {
  std::vector<Circle2> out;
  for (int i = 0; i < 3; ++i) {
    if (i != j) out.push_back(c[i]);
  }
  return out;
}

std::array<Circle2, 3> as_points(const std::array<Point2, 3>& sites) {
  return {point_circle(sites[0]), point_circle(sites[1]), point_circle(sites[2])};
}

void sort_witnesses(std::vector<Witness>& ws) {
  std::stable_sort(ws.begin(), ws.end(),
                   [](const Witness& a, const Witness& b) { return a.slack > b.slack; });
}

double triangle_area2(const std::array<Point2, 3>& s) { return cross(s[1] - s[0], s[2] - s[0]); }

double inradius(const std::array<Point2, 3>& s) {
  const double perimeter = dist(s[0], s[1]) + dist(s[1], s[2]) + dist(s[2], s[0]);
  return std::abs(triangle_area2(s)) / perimeter;
}

Point2 random_in_triangle(Rng& rng, const std::array<Point2, 3>& s) {
  const double a = rng.unit(), b = rng.unit();
  const double sa = std::sqrt(a);
  return (1.0 - sa) * s[0] + (sa * (1.0 - b)) * s[1] + (sa * b) * s[2];
}

std::array<Point2, 3> random_sites(Rng& rng, const RngConfig& cfg, int& budget) {
  for (;;) {
    std::array<Point2, 3> s;
    for (Point2& p : s) p = {rng.uniform(cfg.coord_min, cfg.coord_max), rng.uniform(cfg.coord_min, cfg.coord_max)};
    if (0.5 * std::abs(triangle_area2(s)) >= cfg.min_triangle_area) return s;
    if (--budget <= 0) throw Error(ErrorCode::GenerationExhausted, "could not place a triangle");
  }
}

}  // namespace

void validate_instance(const CarouselInstance& inst, const Tolerance& tol) {
  const auto& s = inst.sites;
  for (const Point2& p : s) {
    if (!is_finite(p)) throw Error(ErrorCode::InvalidInstance, "non-finite site");
  }
  for (const Circle2& c : inst.u) {
    if (!is_finite(c.center) || !(c.radius >= 0.0) || !std::isfinite(c.radius)) {
      throw Error(ErrorCode::InvalidInstance, "circles need finite data and radius >= 0");
    }
  }
  const bool collinear = orientation(s[0], s[1], s[2], tol) == 0;
  if (collinear && (inst.u[0].radius > tol.eps_geom || inst.u[1].radius > tol.eps_geom)) {
    throw Error(ErrorCode::InvalidInstance, "collinear sites admit only radius-0 circles");
  }
  const GeneratorSet triangle{point_circle(s[0]), point_circle(s[1]), point_circle(s[2])};
  for (int i = 0; i < 2; ++i) {
    if (!circle_in_hull(inst.u[i], triangle, tol).contained) {
      throw Error(ErrorCode::InvalidInstance, "U" + std::to_string(i) + " is not inside the triangle");
    }
  }
}

CarouselInstance scaled_instance(const CarouselInstance& inst, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must lie in [0, 1]");
  }
  CarouselInstance out = inst;
  for (Circle2& c : out.u) c.radius *= zeta;
  return out;
}

GeneratorSet witness_generators(const CarouselInstance& inst, int j, int k) {
  check_indices(j, k);
  std::vector<Circle2> gens{inst.u[k]};
  for (const Circle2& c : others(as_points(inst.sites), j)) gens.push_back(c);
  return GeneratorSet(std::move(gens));
}

std::vector<Witness> witness_search(const CarouselInstance& inst, const Tolerance& tol) {
  validate_instance(inst, tol);
  std::vector<Witness> out;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      const auto res = circle_in_hull(inst.u[1 - k], witness_generators(inst, j, k), tol);
      if (res.contained) out.push_back({j, k, res.slack});
    }
  }
  sort_witnesses(out);
  return out;
}

std::vector<Witness> corollary_witness_search(const std::array<Circle2, 3>& c,
                                              const std::array<Circle2, 2>& u,
                                              const Tolerance& tol) {
  const GeneratorSet all{c[0], c[1], c[2]};
  for (int i = 0; i < 2; ++i) {
    if (!circle_in_hull(u[i], all, tol).contained) {
      throw Error(ErrorCode::InvalidInstance, "U" + std::to_string(i) + " is not inside conv(C0, C1, C2)");
    }
  }
  std::vector<Witness> out;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      std::vector<Circle2> gens{u[k]};
      for (const Circle2& g : others(c, j)) gens.push_back(g);
      const auto res = circle_in_hull(u[1 - k], GeneratorSet(std::move(gens)), tol);
      if (res.contained) out.push_back({j, k, res.slack});
    }
  }
  sort_witnesses(out);
  return out;
}

Witness two_carousel_points(const std::array<Point2, 3>& sites, Point2 b0, Point2 b1,
                            const Tolerance& tol) {
  const int o = orientation(sites[0], sites[1], sites[2], tol);
  auto interior = [&](const std::array<Point2, 3>& tri, int orient, Point2 p) {
    if (orient == 0) return false;
    for (int i = 0; i < 3; ++i) {
      if (orientation(tri[i], tri[(i + 1) % 3], p, tol) != orient) return false;
    }
    return true;
  };
  if (!interior(sites, o, b0) || !interior(sites, o, b1)) {
    throw Error(ErrorCode::NotInterior, "both points must be strictly inside the triangle");
  }
  if (dist(b0, b1) <= tol.eps_geom) {
    throw Error(ErrorCode::CoincidentPoints, "points must be distinct");
  }

  auto verified = [&](int j, int k) {
    const Point2 bk = k == 0 ? b0 : b1;
    const Point2 other = k == 0 ? b1 : b0;
    std::vector<Circle2> gens{point_circle(bk)};
    for (const Circle2& c : others(as_points(sites), j)) gens.push_back(c);
    return Witness{j, k, circle_in_hull(point_circle(other), GeneratorSet(std::move(gens)), tol).slack};
  };

  // The triangle is the union of the three sub-triangles obtained by
  // replacing one vertex with b0.
  for (int j = 0; j < 3; ++j) {
    std::array<Point2, 3> sub = sites;
    sub[j] = b0;
    if (interior(sub, o, b1)) return verified(j, 0);
  }
  // Otherwise b1 sits on a spoke [b0, A_j].
  for (int j = 0; j < 3; ++j) {
    const Point2 spoke = sites[j] - b0;
    const double t = dot(b1 - b0, spoke);
    if (orientation(b0, sites[j], b1, tol) == 0 && t > 0.0 && t < dot(spoke, spoke)) {
      return verified(j, 1);
    }
  }
  // Within the collinearity band neither test fires cleanly; take the best pair.
  Witness best{0, 0, -std::numeric_limits<double>::infinity()};
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Witness w = verified(j, k);
      if (w.slack > best.slack) best = w;
    }
  }
  return best;
}

double sweep_slack(const CarouselInstance& inst, int j, int k, double zeta) {
  const CarouselInstance s = scaled_instance(inst, zeta);
  return min_slack(s.u[1 - k], witness_generators(s, j, k));
}

namespace {

Tangency classify_by_direction(const Circle2& target, const GeneratorSet& gens) {
  const auto res = circle_in_hull(target, gens);
  const Point2 u = direction(res.argmin_direction);
  std::vector<double> values;
  double best = -std::numeric_limits<double>::infinity();
  for (const Circle2& g : gens.circles()) {
    values.push_back(dot(g.center, u) + g.radius);
    best = std::max(best, values.back());
  }
  const double band = 1e-9 * (1.0 + std::abs(best));
  const bool circle_active = values[0] >= best - band;
  const bool site_active = values[1] >= best - band || values[2] >= best - band;
  if (circle_active && site_active) return Tangency::Leg;
  return circle_active ? Tangency::FrontArc : Tangency::BaseSide;
}

double piece_clearance(const HullPiece& p, const Circle2& target) {
  if (p.kind == HullPiece::Kind::Segment) {
    return segment_distance(target.center, p.begin, p.end) - target.radius;
  }
  const Point2 rel = target.center - p.circle.center;
  const double rn = norm(rel);
  const bool on_span =
      rn == 0.0 || normalize_angle(polar_angle(rel) - p.theta_begin) <= p.theta_end - p.theta_begin;
  const double d = on_span ? std::abs(p.circle.radius - rn)
                           : std::min(dist(target.center, p.begin), dist(target.center, p.end));
  return d - target.radius;
}

Tangency classify(const CarouselInstance& inst, int j, int k, double zeta, const Tolerance& tol) {
  const CarouselInstance s = scaled_instance(inst, zeta);
  const Circle2& target = s.u[1 - k];
  const GeneratorSet gens = witness_generators(s, j, k);
  HullBoundary hb;
  try {
    hb = hull_boundary(gens, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateHull) throw;
    return classify_by_direction(target, gens);
  }
  const HullPiece* binding = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const HullPiece& p : hb.pieces) {
    const double c = piece_clearance(p, target);
    if (c < best) {
      best = c;
      binding = &p;
    }
  }
  if (binding == nullptr) return classify_by_direction(target, gens);
  if (binding->kind == HullPiece::Kind::Arc) {
    return binding->from == 0 ? Tangency::FrontArc : Tangency::Leg;
  }
  return (binding->from == 0 || binding->to == 0) ? Tangency::Leg : Tangency::BaseSide;
}

}  // namespace

XiSweepReport xi_sweep_fixed(const CarouselInstance& inst, int j, int k, double tol,
                             const Tolerance& eps) {
  check_indices(j, k);
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep tolerance must be positive");
  validate_instance(inst, eps);

  XiSweepReport rep;
  rep.j = j;
  rep.k = k;
  auto slack = [&](double zeta) { return sweep_slack(inst, j, k, zeta); };

  constexpr int kGrid = 64;
  const double s0 = slack(0.0);
  if (s0 < 0.0) {
    rep.xi_star = rep.xi_upper = 0.0;
    rep.slack_at_xi_star = rep.slack_at_upper = s0;
    rep.tangency = Tangency::NoneAtZero;
    return rep;
  }
  double lo = 0.0, hi = -1.0, s_lo = s0, s_hi = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double z = static_cast<double>(i) / (kGrid - 1);
    const double s = slack(z);
    if (s < 0.0) {
      hi = z;
      s_hi = s;
      break;
    }
    lo = z;
    s_lo = s;
  }
  if (hi < 0.0) {
    rep.xi_star = rep.xi_upper = 1.0;
    rep.slack_at_xi_star = rep.slack_at_upper = s_lo;
    rep.tangency = Tangency::NoneAtOne;
    return rep;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double s = slack(mid);
    if (s >= 0.0) {
      lo = mid;
      s_lo = s;
    } else {
      hi = mid;
      s_hi = s;
    }
  }
  rep.xi_star = lo;
  rep.slack_at_xi_star = s_lo;
  rep.xi_upper = hi;
  rep.slack_at_upper = s_hi;
  rep.tangency = classify(inst, j, k, lo, eps);
  return rep;
}

CarouselInstance random_instance(std::uint64_t seed, const RngConfig& cfg) {
  Rng rng(seed);
  int budget = cfg.max_rejections;
  CarouselInstance inst;
  // the triangle must have room for the smallest admissible circle
  do {
    inst.sites = random_sites(rng, cfg, budget);
  } while (inradius(inst.sites) <= cfg.radius_min + cfg.min_hypothesis_slack && --budget > 0);
  if (budget <= 0) throw Error(ErrorCode::GenerationExhausted, "no triangle fits the radius range");
  const GeneratorSet triangle{point_circle(inst.sites[0]), point_circle(inst.sites[1]),
                              point_circle(inst.sites[2])};
  const double rmax = std::min(cfg.radius_max, inradius(inst.sites));
  for (Circle2& c : inst.u) {
    for (;;) {
      c.center = random_in_triangle(rng, inst.sites);
      c.radius = rmax > cfg.radius_min ? rng.uniform(cfg.radius_min, rmax) : cfg.radius_min;
      if (min_slack(c, triangle) > cfg.min_hypothesis_slack) break;
      if (--budget <= 0) throw Error(ErrorCode::GenerationExhausted, "rejection budget exhausted");
    }
  }
  return inst;
}

CorollaryInstance random_corollary_instance(std::uint64_t seed, const RngConfig& cfg) {
  Rng rng(seed);
  int budget = cfg.max_rejections;
  CorollaryInstance inst;
  const auto centers = random_sites(rng, cfg, budget);
  for (int i = 0; i < 3; ++i) {
    inst.c[i] = {centers[i], rng.uniform(cfg.radius_min, cfg.radius_max)};
  }
  const GeneratorSet hull{inst.c[0], inst.c[1], inst.c[2]};
  double biggest = 0.0;
  for (const Circle2& c : inst.c) biggest = std::max(biggest, c.radius);
  const double rmax = std::min(cfg.radius_max, inradius(centers) + biggest);
  for (Circle2& u : inst.u) {
    for (;;) {
      const Point2 base = random_in_triangle(rng, centers);
      const Circle2& near = inst.c[rng.below(3)];
      // pull some centres towards a generator so the round parts get exercised
      const double pull = rng.unit();
      u.center = (1.0 - pull) * base + pull * near.center;
      u.radius = rmax > cfg.radius_min ? rng.uniform(cfg.radius_min, rmax) : cfg.radius_min;
      if (min_slack(u, hull) > cfg.min_hypothesis_slack) break;
      if (--budget <= 0) throw Error(ErrorCode::GenerationExhausted, "rejection budget exhausted");
    }
  }
  return inst;
}

PointPairInstance random_point_pair(std::uint64_t seed, const RngConfig& cfg) {
  Rng rng(seed);
  int budget = cfg.max_rejections;
  PointPairInstance inst;
  inst.sites = random_sites(rng, cfg, budget);
  const Tolerance tol;
  const int o = orientation(inst.sites[0], inst.sites[1], inst.sites[2], tol);
  auto strictly_inside = [&](Point2 p) {
    for (int i = 0; i < 3; ++i) {
      const Point2 a = inst.sites[i], b = inst.sites[(i + 1) % 3];
      if (orientation(a, b, p, tol) != o || segment_distance(p, a, b) < 1e-6) return false;
    }
    return true;
  };
  for (;;) {
    inst.b0 = random_in_triangle(rng, inst.sites);
    if (rng.unit() < 0.2) {
      // exercise the spoke case: b1 strictly between b0 and a vertex
      const Point2 vertex = inst.sites[rng.below(3)];
      inst.b1 = inst.b0 + rng.uniform(0.05, 0.95) * (vertex - inst.b0);
    } else {
      inst.b1 = random_in_triangle(rng, inst.sites);
    }
    if (strictly_inside(inst.b0) && strictly_inside(inst.b1) && dist(inst.b0, inst.b1) > 1e-6) {
      return inst;
    }
    if (--budget <= 0) throw Error(ErrorCode::GenerationExhausted, "rejection budget exhausted");
  }
}

}  // namespace carousel
