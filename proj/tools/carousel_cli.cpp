// carousel: run scenarios, fuzz campaigns, oracle checks and figure rendering.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "carousel/harness/fuzz.hpp"
#include "carousel/harness/reports.hpp"
#include "carousel/harness/svg.hpp"

using namespace carousel;
using namespace carousel::harness;

namespace {

struct Output {
  std::string report_path;
  bool json = false;
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--report", out.report_path, "Write the JSON report to this file");
  cmd->add_flag("--json", out.json, "Print the JSON report instead of the summary");
}

int emit(const RunOutcome& r, const Output& out) {
  const std::string text = r.report.dump(2) + "\n";
  if (!out.report_path.empty()) {
    std::ofstream f(out.report_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out.report_path << "\n";
      return kInputError;
    }
    f << text;
  }
  std::cout << (out.json ? text : r.summary);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witness search and verification for circles in triangles", "carousel"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Output out;

  std::string check_path;
  auto* check = app.add_subcommand("check", "Run a scenario file and verify its claim");
  check->add_option("scenario", check_path, "Scenario JSON file")->required();
  add_output_flags(check, out);

  std::string fuzz_kind = "theorem2d";
  std::size_t fuzz_n = 1000;
  std::uint64_t fuzz_seed = 0;
  std::string dump_dir;
  auto* fuzz = app.add_subcommand("fuzz", "Seeded random campaign");
  fuzz->add_option("--kind", fuzz_kind, "theorem2d, corollary2d or points2d")
      ->check(CLI::IsMember({"theorem2d", "corollary2d", "points2d"}));
  fuzz->add_option("--n", fuzz_n, "Number of trials")->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", fuzz_seed, "Campaign seed");
  fuzz->add_option("--dump-dir", dump_dir, "Directory for failing scenarios");
  add_output_flags(fuzz, out);

  std::size_t oracle_n = 1000;
  std::uint64_t oracle_seed = 0;
  auto* oracle = app.add_subcommand("oracle", "Compare containment against the sampling oracle");
  oracle->add_option("--n", oracle_n, "Number of queries")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oracle_seed, "Campaign seed");
  add_output_flags(oracle, out);

  std::string sweep_path;
  std::optional<int> sweep_j, sweep_k;
  double sweep_tol = 1e-9;
  auto* sweep = app.add_subcommand("sweep", "Critical-ratio sweep of a theorem2d or sweep scenario");
  sweep->add_option("scenario", sweep_path, "Scenario JSON file")->required();
  sweep->add_option("--j", sweep_j, "Omitted site")->check(CLI::Range(0, 2));
  sweep->add_option("--k", sweep_k, "Growing circle")->check(CLI::Range(0, 1));
  sweep->add_option("--tol", sweep_tol, "Bisection width")->check(CLI::PositiveNumber);
  add_output_flags(sweep, out);

  Repro3dRequest repro;
  auto* repro3d = app.add_subcommand("repro3d", "Reproduce a sphere counterexample");
  repro3d->add_option("--example", repro.example, "4.1 or 4.2")->check(CLI::IsMember({"4.1", "4.2"}));
  repro3d->add_option("--t", repro.t, "Number of spheres (4.2)")->check(CLI::Range(3, 1000));
  repro3d->add_option("--r", repro.r, "Sphere radius (4.1)")->check(CLI::PositiveNumber);
  repro3d->add_option("--side", repro.side, "Cube side")->check(CLI::PositiveNumber);
  repro3d->add_option("--factor", repro.arc_radius_factor, "Guide radius over |BC| (4.2)")
      ->check(CLI::PositiveNumber);
  add_output_flags(repro3d, out);

  std::string render_path, svg_path;
  auto* render = app.add_subcommand("render", "Write an SVG figure for a scenario");
  render->add_option("scenario", render_path, "Scenario JSON file")->required();
  render->add_option("-o,--output", svg_path, "SVG output path")->required();
  add_output_flags(render, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*check) return emit(run_scenario_file(check_path), out);

  if (*fuzz) {
    FuzzOptions opts;
    opts.kind = *parse_fuzz_kind(fuzz_kind);
    opts.n = fuzz_n;
    opts.seed = fuzz_seed;
    if (!dump_dir.empty()) opts.dump_dir = dump_dir;
    const FuzzReport rep = run_fuzz(opts);
    std::cerr << "wall time " << rep.wall_seconds << " s\n";
    return emit(fuzz_outcome(rep), out);
  }

  if (*oracle) return emit(oracle_outcome(run_oracle_check(oracle_n, oracle_seed)), out);

  if (*sweep) {
    try {
      return emit(run_sweep(load_scenario(sweep_path), {sweep_j, sweep_k, sweep_tol}), out);
    } catch (const Error& e) {
      return emit(error_outcome("sweep", e), out);
    }
  }

  if (*repro3d) return emit(run_repro3d(repro), out);

  if (*render) {
    try {
      const Scenario s = load_scenario(render_path);
      const std::string svg = render_svg(s);
      std::ofstream f(svg_path, std::ios::binary);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + svg_path);
      f << svg;
      nlohmann::json rep = report_header("render");
      rep["kind"] = to_string(s.kind);
      rep["svg_bytes"] = svg.size();
      return emit(finish_outcome(std::move(rep), kVerified, "wrote " + svg_path + "\n"), out);
    } catch (const Error& e) {
      return emit(error_outcome("render", e), out);
    }
  }
  return kInputError;
}
