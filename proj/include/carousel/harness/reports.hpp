#ifndef CAROUSEL_HARNESS_REPORTS_HPP
#define CAROUSEL_HARNESS_REPORTS_HPP

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "carousel/harness/scenario.hpp"

namespace carousel::harness {

/// Exit-code contract shared by every verb.
enum ExitCode : int { kVerified = 0, kRefuted = 1, kInputError = 2 };

/// Machine-readable report plus a short human summary. Both are
/// deterministic functions of the inputs.
struct RunOutcome {
  int exit_code = kVerified;
  nlohmann::json report;
  std::string summary;
};

/// Dispatch on the scenario kind.
RunOutcome run_scenario(const Scenario& s);

/// Load, validate and run; parse and schema problems become exit code 2.
RunOutcome run_scenario_file(const std::filesystem::path& path);

struct SweepRequest {
  std::optional<int> j;
  std::optional<int> k;
  double tol = 1e-9;
};

/// xi-sweep for one (j, k), or all six when either index is unset.
RunOutcome run_sweep(const Scenario& s, const SweepRequest& req);

struct Repro3dRequest {
  std::string example = "4.1";
  double side = 1.0;
  std::optional<double> r;
  int t = 3;
  double arc_radius_factor = 10.0;
};

RunOutcome run_repro3d(const Repro3dRequest& req, const Tolerance& tol = {});

/// Common report fields: schema, tool, version, verb.
nlohmann::json report_header(std::string_view verb);
/// Stamp verdict and exit code onto a report and append the verdict line.
RunOutcome finish_outcome(nlohmann::json report, int exit_code, std::string summary);

/// Error outcome for an exception escaping a verb.
RunOutcome error_outcome(const std::string& verb, const Error& e);

nlohmann::json to_json(const Point2& p);
nlohmann::json to_json(const Point3& p);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const XiSweepReport& r);
nlohmann::json to_json(const ContainmentResult& r);
nlohmann::json to_json(const Containment3Result& r);

}  // namespace carousel::harness

#endif  // CAROUSEL_HARNESS_REPORTS_HPP
