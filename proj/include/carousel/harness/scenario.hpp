#ifndef CAROUSEL_HARNESS_SCENARIO_HPP
#define CAROUSEL_HARNESS_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "carousel/sphere3.hpp"
#include "carousel/witness.hpp"

namespace carousel::harness {

inline constexpr std::string_view kScenarioSchema = "carousel/1";
inline constexpr std::string_view kReportSchema = "carousel-report/1";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ScenarioKind {
  Theorem2d,
  Corollary2d,
  Points2d,
  Sweep,
  Sphere3Ex41,
  Sphere3Ex42,
  Reangle2d,
  Hull2d,
};

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_kind(std::string_view name);

/// A validated scenario file. Geometry arrays keep the file's order.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Theorem2d;
  std::vector<Circle2> sites;
  std::vector<Circle2> circles;
  std::vector<Sphere3> spheres;
  Tolerance tol;
  std::optional<std::uint64_t> seed;

  // sweep
  std::optional<int> j;
  std::optional<int> k;
  std::optional<double> sweep_tol;

  // sphere3_ex41 / sphere3_ex42
  double side = 1.0;
  std::optional<double> r;
  int t = 3;
  double arc_radius_factor = 10.0;

  CarouselInstance instance() const;
};

/// Throws Error(ParseError) for malformed JSON and Error(SchemaError) for
/// valid JSON that does not match the documented layout.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const Scenario& s);
/// Canonical serialisation, two-space indented with a trailing newline.
std::string dump_scenario(const Scenario& s);

Scenario theorem_scenario(const CarouselInstance& inst, std::optional<std::uint64_t> seed = {});
Scenario corollary_scenario(const CorollaryInstance& inst, std::optional<std::uint64_t> seed = {});
Scenario points_scenario(const PointPairInstance& inst, std::optional<std::uint64_t> seed = {});

}  // namespace carousel::harness

#endif  // CAROUSEL_HARNESS_SCENARIO_HPP
