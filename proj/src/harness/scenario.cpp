#include "carousel/harness/scenario.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace carousel::harness {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 8> kKindNames = {{
    {ScenarioKind::Theorem2d, "theorem2d"},
    {ScenarioKind::Corollary2d, "corollary2d"},
    {ScenarioKind::Points2d, "points2d"},
    {ScenarioKind::Sweep, "sweep"},
    {ScenarioKind::Sphere3Ex41, "sphere3_ex41"},
    {ScenarioKind::Sphere3Ex42, "sphere3_ex42"},
    {ScenarioKind::Reangle2d, "reangle2d"},
    {ScenarioKind::Hull2d, "hull2d"},
}};

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(where + " must be finite");
  return d;
}

// [x, y, r]
std::vector<Circle2> parse_circles(const json& arr, const std::string& key) {
  if (!arr.is_array()) schema_error(key + " must be an array");
  std::vector<Circle2> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3) schema_error(where + " must be [x, y, r]");
    Circle2 c{{finite_number(e[0], where), finite_number(e[1], where)}, finite_number(e[2], where)};
    if (c.radius < 0.0) schema_error(where + " has a negative radius");
    out.push_back(c);
  }
  return out;
}

std::vector<Sphere3> parse_spheres(const json& arr) {
  if (!arr.is_array()) schema_error("spheres must be an array");
  std::vector<Sphere3> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    const std::string where = "spheres[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 4) schema_error(where + " must be [x, y, z, r]");
    Sphere3 s{{finite_number(e[0], where), finite_number(e[1], where), finite_number(e[2], where)},
              finite_number(e[3], where)};
    if (s.radius < 0.0) schema_error(where + " has a negative radius");
    out.push_back(s);
  }
  return out;
}

int small_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_error(where + " must be an integer");
  return v.get<int>();
}

void require_count(const std::vector<Circle2>& v, std::size_t n, const std::string& key) {
  if (v.size() != n) schema_error(key + " must have exactly " + std::to_string(n) + " entries");
}

void require_points(const std::vector<Circle2>& v, const std::string& key) {
  for (const Circle2& c : v) {
    if (c.radius != 0.0) schema_error(key + " entries must have radius 0");
  }
}

json circle_json(const Circle2& c) { return json::array({c.center.x, c.center.y, c.radius}); }

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

CarouselInstance Scenario::instance() const {
  if (sites.size() != 3 || circles.size() != 2) {
    throw Error(ErrorCode::SchemaError, "scenario does not describe three sites and two circles");
  }
  return {{sites[0].center, sites[1].center, sites[2].center}, {circles[0], circles[1]}};
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");

  static const std::set<std::string> kKeys = {"schema", "kind", "sites", "circles", "spheres",
                                              "tolerance", "seed", "j", "k", "tol", "side", "r",
                                              "t", "arc_radius_factor", "description"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) schema_error("unknown field '" + key + "'");
  }
  if (!doc.contains("schema") || doc["schema"] != std::string(kScenarioSchema)) {
    schema_error("schema must be \"" + std::string(kScenarioSchema) + "\"");
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) schema_error("kind must be a string");
  const auto kind = parse_kind(doc["kind"].get<std::string>());
  if (!kind) schema_error("unknown kind '" + doc["kind"].get<std::string>() + "'");

  Scenario s;
  s.kind = *kind;
  if (doc.contains("sites")) s.sites = parse_circles(doc["sites"], "sites");
  if (doc.contains("circles")) s.circles = parse_circles(doc["circles"], "circles");
  if (doc.contains("spheres")) s.spheres = parse_spheres(doc["spheres"]);
  if (doc.contains("description") && !doc["description"].is_string()) schema_error("description must be a string");
  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    if (!t.is_object()) schema_error("tolerance must be an object");
    for (const auto& [key, _] : t.items()) {
      if (key != "eps_geom" && key != "eps_decision") schema_error("unknown tolerance field '" + key + "'");
    }
    if (t.contains("eps_geom")) s.tol.eps_geom = finite_number(t["eps_geom"], "tolerance.eps_geom");
    if (t.contains("eps_decision")) s.tol.eps_decision = finite_number(t["eps_decision"], "tolerance.eps_decision");
    try {
      s.tol.validate();
    } catch (const Error& e) {
      schema_error(e.what());
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) schema_error("seed must be an unsigned 64-bit integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("j")) s.j = small_int(doc["j"], "j");
  if (doc.contains("k")) s.k = small_int(doc["k"], "k");
  if (doc.contains("tol")) s.sweep_tol = finite_number(doc["tol"], "tol");
  if (doc.contains("side")) s.side = finite_number(doc["side"], "side");
  if (doc.contains("r")) s.r = finite_number(doc["r"], "r");
  if (doc.contains("t")) s.t = small_int(doc["t"], "t");
  if (doc.contains("arc_radius_factor")) s.arc_radius_factor = finite_number(doc["arc_radius_factor"], "arc_radius_factor");

  switch (s.kind) {
    case ScenarioKind::Theorem2d:
    case ScenarioKind::Sweep:
      require_count(s.sites, 3, "sites");
      require_points(s.sites, "sites");
      require_count(s.circles, 2, "circles");
      break;
    case ScenarioKind::Corollary2d:
      require_count(s.sites, 3, "sites");
      require_count(s.circles, 2, "circles");
      break;
    case ScenarioKind::Points2d:
      require_count(s.sites, 3, "sites");
      require_points(s.sites, "sites");
      require_count(s.circles, 2, "circles");
      require_points(s.circles, "circles");
      break;
    case ScenarioKind::Reangle2d:
      require_count(s.sites, 1, "sites");
      require_points(s.sites, "sites");
      require_count(s.circles, 1, "circles");
      if (!(s.circles[0].radius > 0.0)) schema_error("the spanning circle needs a positive radius");
      break;
    case ScenarioKind::Hull2d:
      if (s.sites.empty() && s.circles.empty()) schema_error("hull2d needs at least one generator");
      break;
    case ScenarioKind::Sphere3Ex41:
    case ScenarioKind::Sphere3Ex42:
      if (!(s.side > 0.0)) schema_error("side must be positive");
      if (s.r && !(*s.r > 0.0)) schema_error("r must be positive");
      if (s.t < 3) schema_error("t must be at least 3");
      if (!(s.arc_radius_factor > 0.0)) schema_error("arc_radius_factor must be positive");
      break;
  }
  if (s.j && (*s.j < 0 || *s.j > 2)) schema_error("j must be 0, 1 or 2");
  if (s.k && (*s.k < 0 || *s.k > 1)) schema_error("k must be 0 or 1");
  if (s.sweep_tol && !(*s.sweep_tol > 0.0)) schema_error("tol must be positive");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json to_json(const Scenario& s) {
  json out = json::object();
  out["schema"] = kScenarioSchema;
  out["kind"] = to_string(s.kind);
  if (!s.sites.empty()) {
    json arr = json::array();
    for (const Circle2& c : s.sites) arr.push_back(circle_json(c));
    out["sites"] = arr;
  }
  if (!s.circles.empty()) {
    json arr = json::array();
    for (const Circle2& c : s.circles) arr.push_back(circle_json(c));
    out["circles"] = arr;
  }
  if (!s.spheres.empty()) {
    json arr = json::array();
    for (const Sphere3& c : s.spheres) arr.push_back({c.center.x, c.center.y, c.center.z, c.radius});
    out["spheres"] = arr;
  }
  const Tolerance defaults;
  if (s.tol.eps_geom != defaults.eps_geom || s.tol.eps_decision != defaults.eps_decision) {
    out["tolerance"] = {{"eps_geom", s.tol.eps_geom}, {"eps_decision", s.tol.eps_decision}};
  }
  if (s.seed) out["seed"] = *s.seed;
  if (s.j) out["j"] = *s.j;
  if (s.k) out["k"] = *s.k;
  if (s.sweep_tol) out["tol"] = *s.sweep_tol;
  if (s.kind == ScenarioKind::Sphere3Ex41 || s.kind == ScenarioKind::Sphere3Ex42) {
    out["side"] = s.side;
    if (s.r) out["r"] = *s.r;
  }
  if (s.kind == ScenarioKind::Sphere3Ex42) {
    out["t"] = s.t;
    out["arc_radius_factor"] = s.arc_radius_factor;
  }
  return out;
}

std::string dump_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

Scenario theorem_scenario(const CarouselInstance& inst, std::optional<std::uint64_t> seed) {
  Scenario s;
  s.kind = ScenarioKind::Theorem2d;
  for (const Point2& p : inst.sites) s.sites.push_back(point_circle(p));
  s.circles = {inst.u[0], inst.u[1]};
  s.seed = seed;
  return s;
}

Scenario corollary_scenario(const CorollaryInstance& inst, std::optional<std::uint64_t> seed) {
  Scenario s;
  s.kind = ScenarioKind::Corollary2d;
  s.sites = {inst.c[0], inst.c[1], inst.c[2]};
  s.circles = {inst.u[0], inst.u[1]};
  s.seed = seed;
  return s;
}

Scenario points_scenario(const PointPairInstance& inst, std::optional<std::uint64_t> seed) {
  Scenario s;
  s.kind = ScenarioKind::Points2d;
  for (const Point2& p : inst.sites) s.sites.push_back(point_circle(p));
  s.circles = {point_circle(inst.b0), point_circle(inst.b1)};
  s.seed = seed;
  return s;
}

}  // namespace carousel::harness
