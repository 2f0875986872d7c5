#include "carousel/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string_view>

namespace carousel::harness {

namespace {

std::string f3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

struct Style {
  std::string_view stroke = "#222";
  std::string_view fill = "none";
  double width = 1.5;
  bool dashed = false;
  double fill_opacity = 1.0;
};

class Canvas {
 public:
  void circle(const Circle2& c, Style st) {
    extend(c.center, c.radius);
    items_.push_back({Item::Circle, {c.center}, c.radius, 0, 0, st, {}});
  }
  void dot(Point2 p, std::string_view colour) {
    extend(p, 0.0);
    items_.push_back({Item::Dot, {p}, 0.0, 0, 0, {colour, colour, 1.0, false}, {}});
  }
  void polyline(std::vector<Point2> pts, Style st, bool closed) {
    for (Point2 p : pts) extend(p, 0.0);
    items_.push_back({closed ? Item::Polygon : Item::Polyline, std::move(pts), 0.0, 0, 0, st, {}});
  }
  // counterclockwise arc over polar angles [a0, a1]
  void arc(const Circle2& c, double a0, double a1, Style st) {
    const int steps = 16;
    for (int i = 0; i <= steps; ++i) extend(c.center + c.radius * direction(a0 + (a1 - a0) * i / steps), 0.0);
    items_.push_back({Item::Arc, {c.center}, c.radius, a0, a1, st, {}});
  }
  void hull(const HullBoundary& hb, Style st) {
    for (const HullPiece& p : hb.pieces) {
      if (p.is_full_circle()) {
        circle(p.circle, st);
        return;
      }
      extend(p.begin, 0.0);
      extend(p.end, 0.0);
      if (p.kind == HullPiece::Kind::Arc) {
        for (int i = 1; i < 16; ++i) {
          extend(p.circle.center + p.circle.radius * direction(p.theta_begin + (p.theta_end - p.theta_begin) * i / 16), 0.0);
        }
      }
    }
    items_.push_back({Item::Hull, {}, 0.0, 0, 0, st, hb.pieces});
  }
  void label(Point2 p, std::string text) {
    extend(p, 0.0);
    labels_.emplace_back(p, std::move(text));
  }

  std::string render(std::string_view title) const {
    double w = std::max(hi_.x - lo_.x, 1e-6), h = std::max(hi_.y - lo_.y, 1e-6);
    const double pad = 0.08 * std::max(w, h);
    const double scale = 560.0 / (std::max(w, h) + 2 * pad);
    const double width = (w + 2 * pad) * scale, height = (h + 2 * pad) * scale;
    auto X = [&](double x) { return f3((x - lo_.x + pad) * scale); };
    auto Y = [&](double y) { return f3((hi_.y - y + pad) * scale); };
    auto P = [&](Point2 p) { return X(p.x) + "," + Y(p.y); };
    auto style = [&](const Style& st) {
      std::string s = " fill=\"" + std::string(st.fill) + "\" stroke=\"" + std::string(st.stroke) +
                      "\" stroke-width=\"" + f3(st.width) + "\"";
      if (st.fill_opacity < 1.0) s += " fill-opacity=\"" + f3(st.fill_opacity) + "\"";
      if (st.dashed) s += " stroke-dasharray=\"4,3\"";
      return s;
    };
    auto arc_cmd = [&](const Circle2& c, double a0, double a1) {
      const Point2 e = c.center + c.radius * direction(a1);
      // a counterclockwise world arc is clockwise once y is flipped
      return "A" + f3(c.radius * scale) + "," + f3(c.radius * scale) + " 0 " + (a1 - a0 > std::numbers::pi ? "1" : "0") +
             " 0 " + P(e);
    };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f3(width) + "\" height=\"" + f3(height) +
                      "\" viewBox=\"0 0 " + f3(width) + " " + f3(height) + "\">\n";
    out += "<title>" + std::string(title) + "</title>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + f3(width) + "\" height=\"" + f3(height) + "\" fill=\"white\"/>\n";
    for (const Item& it : items_) {
      switch (it.kind) {
        case Item::Circle:
          out += "<circle cx=\"" + X(it.pts[0].x) + "\" cy=\"" + Y(it.pts[0].y) + "\" r=\"" + f3(it.r * scale) + "\"" +
                 style(it.style) + "/>\n";
          break;
        case Item::Dot:
          out += "<circle cx=\"" + X(it.pts[0].x) + "\" cy=\"" + Y(it.pts[0].y) + "\" r=\"3.000\"" + style(it.style) + "/>\n";
          break;
        case Item::Polyline:
        case Item::Polygon: {
          std::string d;
          for (std::size_t i = 0; i < it.pts.size(); ++i) d += (i == 0 ? "M" : " L") + P(it.pts[i]);
          if (it.kind == Item::Polygon) d += " Z";
          out += "<path d=\"" + d + "\"" + style(it.style) + "/>\n";
          break;
        }
        case Item::Arc: {
          const Circle2 c{it.pts[0], it.r};
          std::string d = "M" + P(c.center + c.radius * direction(it.a0));
          d += " " + arc_cmd(c, it.a0, it.a1);
          out += "<path d=\"" + d + "\"" + style(it.style) + "/>\n";
          break;
        }
        case Item::Hull: {
          std::string d;
          for (std::size_t i = 0; i < it.pieces.size(); ++i) {
            const HullPiece& p = it.pieces[i];
            if (i == 0) d += "M" + P(p.begin);
            if (p.kind == HullPiece::Kind::Segment) {
              d += " L" + P(p.end);
            } else if (p.theta_end - p.theta_begin > 1e-12) {
              d += " " + arc_cmd(p.circle, p.theta_begin, p.theta_end);
            }
          }
          out += "<path d=\"" + d + " Z\"" + style(it.style) + "/>\n";
          break;
        }
      }
    }
    for (const auto& [p, text] : labels_) {
      out += "<text x=\"" + f3((p.x - lo_.x + pad) * scale + 5) + "\" y=\"" + f3((hi_.y - p.y + pad) * scale - 5) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + text + "</text>\n";
    }
    out += "</svg>\n";
    return out;
  }

 private:
  struct Item {
    enum Kind { Circle, Dot, Polyline, Polygon, Arc, Hull } kind;
    std::vector<Point2> pts;
    double r;
    double a0, a1;
    Style style;
    std::vector<HullPiece> pieces;
  };

  void extend(Point2 p, double r) {
    lo_.x = std::min(lo_.x, p.x - r);
    lo_.y = std::min(lo_.y, p.y - r);
    hi_.x = std::max(hi_.x, p.x + r);
    hi_.y = std::max(hi_.y, p.y + r);
  }

  std::vector<Item> items_;
  std::vector<std::pair<Point2, std::string>> labels_;
  Point2 lo_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
};

constexpr Style kSite{"#222", "none", 1.5, false};
constexpr Style kCircle0{"#1f5fbf", "none", 1.5, false};
constexpr Style kCircle1{"#c0392b", "none", 1.5, false};
constexpr Style kHull{"#2e8b57", "#2e8b57", 1.2, false, 0.3};
constexpr Style kGuide{"#777", "none", 1.0, true};

void draw_triangle(Canvas& cv, const std::vector<Circle2>& sites) {
  std::vector<Point2> pts;
  for (const Circle2& c : sites) pts.push_back(c.center);
  cv.polyline(pts, kSite, true);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i].radius > 0.0) cv.circle(sites[i], {"#555", "none", 1.0, false});
    cv.dot(sites[i].center, "#222");
    cv.label(sites[i].center, "A" + std::to_string(i));
  }
}

void draw_hull(Canvas& cv, const std::vector<Circle2>& gens, const Tolerance& tol) {
  try {
    cv.hull(hull_boundary(GeneratorSet(gens), tol), kHull);
  } catch (const Error&) {
    std::vector<Point2> pts;
    for (const Circle2& c : gens) pts.push_back(c.center);
    cv.polyline(pts, kHull, false);
  }
}

std::vector<Circle2> witness_gens(const std::vector<Circle2>& sites, const std::array<Circle2, 2>& u, int j, int k) {
  std::vector<Circle2> gens{u[static_cast<std::size_t>(k)]};
  for (int i = 0; i < 3; ++i) {
    if (i != j) gens.push_back(sites[static_cast<std::size_t>(i)]);
  }
  return gens;
}

void draw_pair(Canvas& cv, const std::array<Circle2, 2>& u) {
  cv.circle(u[0], kCircle0);
  cv.circle(u[1], kCircle1);
  cv.dot(u[0].center, kCircle0.stroke);
  cv.dot(u[1].center, kCircle1.stroke);
  cv.label(u[0].center, "U0");
  cv.label(u[1].center, "U1");
}

std::string render_witness(const Scenario& s, bool corollary) {
  Canvas cv;
  const std::array<Circle2, 2> u = {s.circles[0], s.circles[1]};
  std::vector<Witness> ws;
  try {
    ws = corollary ? corollary_witness_search({s.sites[0], s.sites[1], s.sites[2]}, u, s.tol)
                   : witness_search(s.instance(), s.tol);
  } catch (const Error&) {
  }
  if (!ws.empty()) draw_hull(cv, witness_gens(s.sites, u, ws.front().j, ws.front().k), s.tol);
  draw_triangle(cv, s.sites);
  draw_pair(cv, u);
  std::string title = std::string(to_string(s.kind));
  if (!ws.empty()) title += " witness j=" + std::to_string(ws.front().j) + " k=" + std::to_string(ws.front().k);
  return cv.render(title);
}

std::string render_sweep(const Scenario& s) {
  Canvas cv;
  const CarouselInstance inst = s.instance();
  int j = s.j.value_or(0), k = s.k.value_or(0);
  XiSweepReport best;
  bool have = false;
  try {
    for (int jj = 0; jj < 3; ++jj) {
      for (int kk = 0; kk < 2; ++kk) {
        if (s.j && s.k && (jj != j || kk != k)) continue;
        const XiSweepReport r = xi_sweep_fixed(inst, jj, kk, s.sweep_tol.value_or(1e-9), s.tol);
        if (!have || r.xi_star > best.xi_star) best = r, have = true;
      }
    }
  } catch (const Error&) {
  }
  std::string title = "sweep";
  if (have) {
    const CarouselInstance scaled = scaled_instance(inst, best.xi_star);
    const auto gens = witness_gens(s.sites, scaled.u, best.j, best.k);
    draw_hull(cv, gens, s.tol);
    cv.circle(inst.u[0], {kCircle0.stroke, "none", 0.8, true});
    cv.circle(inst.u[1], {kCircle1.stroke, "none", 0.8, true});
    draw_triangle(cv, s.sites);
    draw_pair(cv, scaled.u);
    if (best.tangency != Tangency::NoneAtOne && best.tangency != Tangency::NoneAtZero) {
      const Circle2& target = scaled.u[static_cast<std::size_t>(1 - best.k)];
      const auto res = circle_in_hull(target, GeneratorSet(gens), s.tol);
      const Point2 touch = target.center + target.radius * direction(res.argmin_direction);
      cv.dot(touch, "#e67e22");
      cv.label(touch, std::string(to_string(best.tangency)));
    }
    title += " j=" + std::to_string(best.j) + " k=" + std::to_string(best.k) + " xi=" + f3(best.xi_star);
  } else {
    draw_triangle(cv, s.sites);
    draw_pair(cv, inst.u);
  }
  return cv.render(title);
}

std::string render_points(const Scenario& s) {
  Canvas cv;
  const std::array<Point2, 3> sites = {s.sites[0].center, s.sites[1].center, s.sites[2].center};
  const Point2 b0 = s.circles[0].center, b1 = s.circles[1].center;
  std::string title = "points2d";
  try {
    const Witness w = two_carousel_points(sites, b0, b1, s.tol);
    draw_hull(cv, witness_gens(s.sites, {s.circles[0], s.circles[1]}, w.j, w.k), s.tol);
    title += " witness j=" + std::to_string(w.j) + " k=" + std::to_string(w.k);
  } catch (const Error&) {
  }
  draw_triangle(cv, s.sites);
  cv.dot(b0, kCircle0.stroke);
  cv.dot(b1, kCircle1.stroke);
  cv.label(b0, "b0");
  cv.label(b1, "b1");
  return cv.render(title);
}

std::string render_reangle(const Scenario& s) {
  Canvas cv;
  const Point2 f = s.sites[0].center;
  const Circle2 c = s.circles[0];
  cv.circle(c, {"#999", "none", 0.8, true});
  try {
    const auto [t1, t2] = tangent_points_from_point(f, c, s.tol);
    const double reach = dist(f, c.center) + 2.0 * c.radius;
    const Point2 e1 = t1 + reach * ((t1 - f) / norm(t1 - f));
    const Point2 e2 = t2 + reach * ((t2 - f) / norm(t2 - f));
    cv.polyline({e1, t1}, kCircle1, false);
    cv.polyline({e2, t2}, kCircle1, false);
    // the near arc between the tangent points faces the focus
    const double a1 = polar_angle(t1 - c.center), a2 = polar_angle(t2 - c.center);
    const double af = polar_angle(f - c.center);
    double lo = a1, hi = a2;
    if (hi < lo) hi += kTwoPi;
    if (!(af >= lo && af <= hi) && !(af + kTwoPi >= lo && af + kTwoPi <= hi)) {
      lo = a2;
      hi = a1 < a2 ? a1 + kTwoPi : a1;
    }
    cv.arc(c, lo, hi, kCircle1);
    cv.polyline({f, t1}, {"#999", "none", 0.8, true}, false);
    cv.polyline({f, t2}, {"#999", "none", 0.8, true}, false);
    cv.dot(t1, kCircle1.stroke);
    cv.dot(t2, kCircle1.stroke);
  } catch (const Error&) {
  }
  cv.dot(f, "#222");
  cv.label(f, "F");
  return cv.render("reangle2d");
}

std::string render_hull(const Scenario& s) {
  Canvas cv;
  std::vector<Circle2> gens = s.sites;
  gens.insert(gens.end(), s.circles.begin(), s.circles.end());
  draw_hull(cv, gens, s.tol);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].radius > 0.0) cv.circle(gens[i], {"#555", "none", 1.0, false});
    cv.dot(gens[i].center, "#222");
    cv.label(gens[i].center, "g" + std::to_string(i));
  }
  return cv.render("hull2d");
}

void draw_tetrahedron(Canvas& cv, const Plane3& plane, const std::array<Point3, 4>& v) {
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      cv.polyline({plane.project(v[static_cast<std::size_t>(a)]), plane.project(v[static_cast<std::size_t>(b)])},
                  {"#aaa", "none", 1.0, false}, false);
    }
  }
  // vertices that project to the same point share one label
  std::vector<std::pair<Point2, std::string>> marks;
  for (int a = 0; a < 4; ++a) {
    const Point2 p = plane.project(v[static_cast<std::size_t>(a)]);
    auto it = std::find_if(marks.begin(), marks.end(), [&](const auto& m) { return dist(m.first, p) < 1e-9; });
    if (it == marks.end()) {
      marks.emplace_back(p, "A" + std::to_string(a));
    } else {
      it->second += ",A" + std::to_string(a);
    }
  }
  for (const auto& [p, text] : marks) {
    cv.dot(p, "#222");
    cv.label(p, text);
  }
}

std::string render_sphere(const Scenario& s) {
  Canvas cv;
  if (s.kind == ScenarioKind::Sphere3Ex41) {
    const auto v = tetrahedron_from_cube(s.side);
    const AxisPoints ax = axis_points(v);
    const Plane3 plane = plane_through(ax.b, v[2], v[3]);
    draw_tetrahedron(cv, plane, v);
    const double r = s.r.value_or(s.side / 10.0);
    cv.circle({plane.project(ax.p_minus1), r}, kCircle0);
    cv.circle({plane.project(ax.p0), r}, kCircle1);
    cv.label(plane.project(ax.p_minus1), "S-1");
    cv.label(plane.project(ax.p0), "S0");
    return cv.render("sphere3_ex41 cross-section");
  }
  const Example42Report ex = example_4_2(s.t, s.arc_radius_factor, s.side, s.tol, {2, 4, 100});
  draw_tetrahedron(cv, ex.plane, ex.vertices);
  const Circle2 guide{ex.plane.project(ex.guide_center), ex.guide_radius};
  // only the part of the guide circle near the spheres is worth drawing
  const Point2 first = ex.plane.project(ex.sphere(-1).center), last = ex.plane.project(ex.sphere(ex.t - 2).center);
  double a0 = polar_angle(first - guide.center), a1 = polar_angle(last - guide.center);
  if (a1 < a0) std::swap(a0, a1);
  if (a1 - a0 > std::numbers::pi) std::swap(a0, a1), a1 += kTwoPi;
  const double margin = 0.3 * (a1 - a0) + 1e-3;
  cv.arc(guide, a0 - margin, a1 + margin, kGuide);
  for (int k = -1; k <= ex.t - 2; ++k) {
    const Sphere3& sp = ex.sphere(k);
    cv.circle({ex.plane.project(sp.center), sp.radius}, k % 2 == 0 ? kCircle1 : kCircle0);
    cv.label(ex.plane.project(sp.center), "S" + std::to_string(k));
  }
  return cv.render("sphere3_ex42 cross-section t=" + std::to_string(ex.t));
}

}  // namespace

std::string render_svg(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::Theorem2d: return render_witness(s, false);
    case ScenarioKind::Corollary2d: return render_witness(s, true);
    case ScenarioKind::Points2d: return render_points(s);
    case ScenarioKind::Sweep: return render_sweep(s);
    case ScenarioKind::Reangle2d: return render_reangle(s);
    case ScenarioKind::Hull2d: return render_hull(s);
    case ScenarioKind::Sphere3Ex41:
    case ScenarioKind::Sphere3Ex42: return render_sphere(s);
  }
  throw Error(ErrorCode::UnsupportedKind, std::string(to_string(s.kind)));
}

}  // namespace carousel::harness
