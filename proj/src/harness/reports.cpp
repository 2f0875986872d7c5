#include "carousel/harness/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace carousel::harness {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string_view verdict_name(int exit_code) {
  switch (exit_code) {
    case kVerified: return "verified";
    case kRefuted: return "refuted";
    default: return "invalid";
  }
}

json header(std::string_view verb) { return report_header(verb); }

RunOutcome finish(json report, int exit_code, std::string summary) {
  return finish_outcome(std::move(report), exit_code, std::move(summary));
}

json gaps_json(const std::vector<AngularGap>& gaps) {
  json arr = json::array();
  for (const AngularGap& g : gaps) arr.push_back({g.lo, g.hi});
  return arr;
}

json circle_json(const Circle2& c) { return {{"center", to_json(c.center)}, {"radius", c.radius}}; }
json sphere_json(const Sphere3& s) { return {{"center", to_json(s.center)}, {"radius", s.radius}}; }

json witness_pairs(const std::array<Circle2, 2>& u, const std::vector<Circle2>& rest, const Tolerance& tol) {
  json pairs = json::array();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      std::vector<Circle2> gens{u[static_cast<std::size_t>(k)]};
      for (int i = 0; i < 3; ++i) {
        if (i != j) gens.push_back(rest[static_cast<std::size_t>(i)]);
      }
      const auto res = circle_in_hull(u[static_cast<std::size_t>(1 - k)], GeneratorSet(std::move(gens)), tol);
      json p = to_json(res);
      p["j"] = j;
      p["k"] = k;
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

RunOutcome run_witness_kind(const Scenario& s, bool corollary) {
  const std::string_view kind = to_string(s.kind);
  json rep = header("check");
  rep["kind"] = kind;
  rep["scenario"] = to_json(s);
  const std::array<Circle2, 2> u = {s.circles[0], s.circles[1]};
  std::vector<Witness> ws;
  if (corollary) {
    ws = corollary_witness_search({s.sites[0], s.sites[1], s.sites[2]}, u, s.tol);
  } else {
    ws = witness_search(s.instance(), s.tol);
  }
  json wj = json::array();
  for (const Witness& w : ws) wj.push_back(to_json(w));
  rep["witnesses"] = wj;
  rep["pairs"] = witness_pairs(u, s.sites, s.tol);
  const bool ok = !ws.empty() && ws.front().slack >= -1e-9;
  std::string summary = std::string(kind) + ": " + std::to_string(ws.size()) + " witness pair(s)";
  if (!ws.empty()) {
    summary += ", best (j=" + std::to_string(ws.front().j) + ", k=" + std::to_string(ws.front().k) +
               ") slack " + num(ws.front().slack);
  }
  return finish(std::move(rep), ok ? kVerified : kRefuted, summary + "\n");
}

RunOutcome run_points(const Scenario& s) {
  json rep = header("check");
  rep["kind"] = "points2d";
  rep["scenario"] = to_json(s);
  const std::array<Point2, 3> sites = {s.sites[0].center, s.sites[1].center, s.sites[2].center};
  const Point2 b0 = s.circles[0].center, b1 = s.circles[1].center;
  const Witness w = two_carousel_points(sites, b0, b1, s.tol);
  std::vector<Circle2> gens{point_circle(w.k == 0 ? b0 : b1)};
  for (int i = 0; i < 3; ++i) {
    if (i != w.j) gens.push_back(point_circle(sites[static_cast<std::size_t>(i)]));
  }
  const auto check = circle_in_hull(point_circle(w.k == 0 ? b1 : b0), GeneratorSet(std::move(gens)), s.tol);
  rep["witness"] = to_json(w);
  rep["reverification"] = to_json(check);
  return finish(std::move(rep), check.contained ? kVerified : kRefuted,
                "points2d: witness (j=" + std::to_string(w.j) + ", k=" + std::to_string(w.k) +
                    ") slack " + num(check.slack) + "\n");
}

RunOutcome run_reangle(const Scenario& s) {
  json rep = header("check");
  rep["kind"] = "reangle2d";
  rep["scenario"] = to_json(s);
  const Point2 focus = s.sites[0].center;
  const Circle2 c = s.circles[0];
  const auto [t1, t2] = tangent_points_from_point(focus, c, s.tol);
  rep["tangent_points"] = json::array({to_json(t1), to_json(t2)});
  const bool center_in = reangle_contains(focus, c, c.center);
  const bool focus_out = !reangle_contains(focus, c, focus);
  rep["contains_center"] = center_in;
  rep["excludes_focus"] = focus_out;
  return finish(std::move(rep), center_in && focus_out ? kVerified : kRefuted,
                "reangle2d: tangent points (" + num(t1.x) + ", " + num(t1.y) + ") and (" + num(t2.x) +
                    ", " + num(t2.y) + ")\n");
}

RunOutcome run_hull(const Scenario& s) {
  json rep = header("check");
  rep["kind"] = "hull2d";
  rep["scenario"] = to_json(s);
  std::vector<Circle2> gens = s.sites;
  gens.insert(gens.end(), s.circles.begin(), s.circles.end());
  const HullBoundary hb = hull_boundary(GeneratorSet(gens), s.tol);
  json pieces = json::array();
  for (const HullPiece& p : hb.pieces) {
    pieces.push_back({{"kind", p.kind == HullPiece::Kind::Arc ? "arc" : "segment"},
                      {"from", p.from},
                      {"to", p.to},
                      {"begin", to_json(p.begin)},
                      {"end", to_json(p.end)},
                      {"theta_begin", p.theta_begin},
                      {"theta_end", p.theta_end}});
  }
  rep["pieces"] = pieces;
  rep["omitted"] = hb.omitted;
  rep["area"] = hb.area();
  rep["total_turning"] = hb.total_turning;
  rep["max_chain_gap"] = hb.max_chain_gap();
  const bool closed = hb.max_chain_gap() <= s.tol.eps_geom * 1e3;
  return finish(std::move(rep), closed ? kVerified : kRefuted,
                "hull2d: " + std::to_string(hb.pieces.size()) + " piece(s), area " + num(hb.area()) + "\n");
}

}  // namespace

json report_header(std::string_view verb) {
  return {{"schema", kReportSchema}, {"tool", "carousel"}, {"version", kToolVersion}, {"verb", verb}};
}

RunOutcome finish_outcome(json report, int exit_code, std::string summary) {
  report["exit_code"] = exit_code;
  report["verdict"] = verdict_name(exit_code);
  summary += "verdict: " + std::string(verdict_name(exit_code)) + "\n";
  return {exit_code, std::move(report), std::move(summary)};
}

json to_json(const Point2& p) { return json::array({p.x, p.y}); }
json to_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

json to_json(const Witness& w) { return {{"j", w.j}, {"k", w.k}, {"slack", w.slack}}; }

json to_json(const XiSweepReport& r) {
  return {{"j", r.j},
          {"k", r.k},
          {"xi_star", r.xi_star},
          {"slack_at_xi_star", r.slack_at_xi_star},
          {"xi_upper", r.xi_upper},
          {"slack_at_upper", r.slack_at_upper},
          {"tangency", to_string(r.tangency)}};
}

json to_json(const ContainmentResult& r) {
  json out = {{"contained", r.contained},
              {"slack", r.slack},
              {"arc_cover_complete", r.arc_cover_complete},
              {"uncovered", gaps_json(r.uncovered)}};
  if (r.witness_direction) out["witness_direction"] = *r.witness_direction;
  return out;
}

json to_json(const Containment3Result& r) {
  json out = {{"contained", r.contained}, {"slack", r.slack}, {"search", "icosphere-multistart"}};
  if (r.witness_direction) out["witness_direction"] = to_json(*r.witness_direction);
  if (r.projection_certificate) {
    const auto& c = *r.projection_certificate;
    out["projection_certificate"] = {
        {"verdict", c.verdict == ProjectionVerdict::Refuted ? "refuted" : "inconclusive"},
        {"planar", to_json(c.planar)},
        {"gap", -c.planar.slack},
        {"plane", {{"origin", to_json(c.plane.origin)}, {"e1", to_json(c.plane.e1)}, {"e2", to_json(c.plane.e2)}}}};
  }
  return out;
}

RunOutcome run_scenario(const Scenario& s) {
  try {
    switch (s.kind) {
      case ScenarioKind::Theorem2d: return run_witness_kind(s, false);
      case ScenarioKind::Corollary2d: return run_witness_kind(s, true);
      case ScenarioKind::Points2d: return run_points(s);
      case ScenarioKind::Sweep: {
        RunOutcome out = run_sweep(s, {s.j, s.k, s.sweep_tol.value_or(1e-9)});
        out.report["verb"] = "check";
        return out;
      }
      case ScenarioKind::Sphere3Ex41:
      case ScenarioKind::Sphere3Ex42: {
        Repro3dRequest req;
        req.example = s.kind == ScenarioKind::Sphere3Ex41 ? "4.1" : "4.2";
        req.side = s.side;
        req.r = s.r;
        req.t = s.t;
        req.arc_radius_factor = s.arc_radius_factor;
        RunOutcome out = run_repro3d(req, s.tol);
        out.report["verb"] = "check";
        out.report["kind"] = to_string(s.kind);
        return out;
      }
      case ScenarioKind::Reangle2d: return run_reangle(s);
      case ScenarioKind::Hull2d: return run_hull(s);
    }
  } catch (const Error& e) {
    return error_outcome("check", e);
  }
  return error_outcome("check", Error(ErrorCode::UnsupportedKind, std::string(to_string(s.kind))));
}

RunOutcome run_scenario_file(const std::filesystem::path& path) {
  try {
    return run_scenario(load_scenario(path));
  } catch (const Error& e) {
    return error_outcome("check", e);
  }
}

RunOutcome run_sweep(const Scenario& s, const SweepRequest& req) {
  json rep = header("sweep");
  try {
    if (s.kind != ScenarioKind::Sweep && s.kind != ScenarioKind::Theorem2d) {
      throw Error(ErrorCode::UnsupportedKind, "sweep needs a theorem2d or sweep scenario");
    }
    if (!(req.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    rep["kind"] = to_string(s.kind);
    rep["scenario"] = to_json(s);
    rep["tol"] = req.tol;
    const CarouselInstance inst = s.instance();
    validate_instance(inst, s.tol);

    std::vector<std::pair<int, int>> pairs;
    if (req.j && req.k) {
      pairs.emplace_back(*req.j, *req.k);
    } else {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 2; ++k) pairs.emplace_back(j, k);
      }
    }
    json sweeps = json::array();
    bool ok = true;
    std::string summary;
    const XiSweepReport* best = nullptr;
    std::vector<XiSweepReport> reps;
    for (const auto& [j, k] : pairs) reps.push_back(xi_sweep_fixed(inst, j, k, req.tol, s.tol));
    for (const XiSweepReport& r : reps) {
      json sj = to_json(r);
      const double below = sweep_slack(inst, r.j, r.k, std::max(0.0, r.xi_star - req.tol));
      sj["slack_below"] = below;
      bool pass = below >= -s.tol.eps_decision || r.tangency == Tangency::NoneAtZero;
      if (r.xi_star < 1.0 && r.tangency != Tangency::NoneAtZero) {
        const double above = sweep_slack(inst, r.j, r.k, std::min(1.0, r.xi_star + req.tol));
        sj["slack_above"] = above;
        pass = pass && std::abs(r.slack_at_xi_star) <= s.tol.eps_decision && above < s.tol.eps_decision;
      }
      sj["consistent"] = pass;
      ok = ok && pass;
      sweeps.push_back(std::move(sj));
      summary += "(j=" + std::to_string(r.j) + ", k=" + std::to_string(r.k) + ") xi* = " + num(r.xi_star) +
                 " slack " + num(r.slack_at_xi_star) + " " + std::string(to_string(r.tangency)) + "\n";
      if (best == nullptr || r.xi_star > best->xi_star) best = &r;
    }
    rep["sweeps"] = sweeps;
    if (best != nullptr) {
      rep["maximizing"] = {{"j", best->j}, {"k", best->k}, {"xi_star", best->xi_star},
                           {"tangency", to_string(best->tangency)}};
    }
    return finish(std::move(rep), ok ? kVerified : kRefuted, summary);
  } catch (const Error& e) {
    return error_outcome("sweep", e);
  }
}

namespace {

RunOutcome repro_41(const Repro3dRequest& req, const Tolerance& tol) {
  json rep = header("repro3d");
  rep["example"] = "4.1";
  const double r = req.r.value_or(req.side / 10.0);
  const Example41Report ex = example_4_1(req.side, r, tol);
  rep["side"] = ex.side;
  rep["r"] = ex.r;
  json verts = json::array();
  for (const Point3& v : ex.vertices) verts.push_back(to_json(v));
  rep["vertices"] = verts;
  rep["axis"] = {{"B", to_json(ex.axis.b)}, {"C", to_json(ex.axis.c)},
                 {"P_minus1", to_json(ex.axis.p_minus1)}, {"P_0", to_json(ex.axis.p0)}};
  rep["min_face_distance"] = ex.min_face_distance;
  json cases = json::array();
  bool certified = true;
  std::string summary = "two spheres: side " + num(ex.side) + ", r " + num(ex.r) + "\n";
  for (const SphereRefutation& c : ex.cases) {
    json cj = to_json(c.result);
    cj["j"] = c.j;
    cj["k"] = c.k;
    cj["target"] = -1 - c.k;
    cases.push_back(std::move(cj));
    const bool proj = c.result.projection_certificate &&
                      c.result.projection_certificate->verdict == ProjectionVerdict::Refuted;
    if (c.j == 3 && !proj) certified = false;
    summary += "  j=" + std::to_string(c.j) + " k=" + std::to_string(c.k) + ": slack " + num(c.result.slack) +
               (proj ? ", planar gap " + num(-c.result.projection_certificate->planar.slack) : "") + "\n";
  }
  rep["cases"] = cases;
  rep["all_refuted"] = ex.all_refuted();
  rep["projection_certified_j3"] = certified;
  return finish(std::move(rep), ex.all_refuted() && certified ? kVerified : kRefuted, summary);
}

RunOutcome repro_42(const Repro3dRequest& req, const Tolerance& tol) {
  json rep = header("repro3d");
  rep["example"] = "4.2";
  const Example42Report ex = example_4_2(req.t, req.arc_radius_factor, req.side, tol);
  rep["t"] = ex.t;
  rep["side"] = ex.side;
  rep["arc_radius_factor"] = ex.arc_radius_factor;
  json spheres = json::array();
  json section = json::array();
  for (int k = -1; k <= ex.t - 2; ++k) {
    json sj = sphere_json(ex.sphere(k));
    sj["index"] = k;
    spheres.push_back(std::move(sj));
    section.push_back(circle_json({ex.plane.project(ex.sphere(k).center), ex.sphere(k).radius}));
  }
  rep["spheres"] = spheres;
  rep["cross_section"] = {{"plane", {{"origin", to_json(ex.plane.origin)}, {"e1", to_json(ex.plane.e1)}, {"e2", to_json(ex.plane.e2)}}},
                          {"circles", section},
                          {"guide_center", to_json(ex.plane.project(ex.guide_center))},
                          {"guide_radius", ex.guide_radius}};
  const bool tangent = ex.max_tangency_residual <= 1e-9;
  const bool interior = ex.min_interior_margin >= tol.eps_decision * (1.0 - 1e-6);
  rep["checks"] = {{"max_tangency_residual", ex.max_tangency_residual},
                   {"tangent_to_guide", tangent},
                   {"min_interior_margin", ex.min_interior_margin},
                   {"interior", interior},
                   {"cross_section_non_nested", ex.cross_section_non_nested}};
  json cases = json::array();
  double worst = -std::numeric_limits<double>::infinity();
  for (const SphereRefutation& c : ex.cases) {
    json cj = to_json(c.result);
    cj["j"] = c.j;
    cj["k"] = c.k;
    cases.push_back(std::move(cj));
    worst = std::max(worst, c.result.slack);
  }
  rep["cases"] = cases;
  rep["all_refuted"] = ex.all_refuted();
  const bool ok = ex.all_refuted() && tangent && interior && ex.cross_section_non_nested;
  std::string summary = "sphere chain: t " + std::to_string(ex.t) + ", " + std::to_string(ex.cases.size()) +
                        " cases, largest slack " + num(worst) + ", tangency residual " +
                        num(ex.max_tangency_residual) + "\n";
  return finish(std::move(rep), ok ? kVerified : kRefuted, summary);
}

}  // namespace

RunOutcome run_repro3d(const Repro3dRequest& req, const Tolerance& tol) {
  try {
    if (req.example == "4.1") return repro_41(req, tol);
    if (req.example == "4.2") return repro_42(req, tol);
    throw Error(ErrorCode::InvalidArgument, "example must be 4.1 or 4.2");
  } catch (const Error& e) {
    return error_outcome("repro3d", e);
  }
}

RunOutcome error_outcome(const std::string& verb, const Error& e) {
  json rep = header(verb);
  rep["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
  return finish(std::move(rep), kInputError, std::string("error: ") + e.what() + "\n");
}

}  // namespace carousel::harness
