#ifndef CAROUSEL_HARNESS_FUZZ_HPP
#define CAROUSEL_HARNESS_FUZZ_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "carousel/harness/reports.hpp"
#include "carousel/harness/scenario.hpp"

namespace carousel::harness {

enum class FuzzKind { Theorem2d, Corollary2d, Points2d };

std::string_view to_string(FuzzKind kind);
std::optional<FuzzKind> parse_fuzz_kind(std::string_view name);

struct FuzzOptions {
  FuzzKind kind = FuzzKind::Theorem2d;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  RngConfig rng;
  Tolerance tol;
  /// A trial passes when its best slack is at least this.
  double pass_slack = -1e-9;
  /// Failing trials are written here as self-contained scenario files.
  std::optional<std::filesystem::path> dump_dir;
  /// 0 means CAROUSEL_THREADS, single-threaded when unset.
  unsigned threads = 0;
};

struct FuzzFailure {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<Scenario> scenario;   // absent when generation itself failed
  double best_slack = 0.0;
  std::string diagnostic;
};

struct SlackHistogram {
  std::vector<double> edges;            // bin i is [edges[i], edges[i+1])
  std::vector<std::size_t> counts;      // edges.size() + 1 bins, outer ones unbounded
};

struct FuzzReport {
  FuzzKind kind = FuzzKind::Theorem2d;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double min_best_slack = 0.0;
  SlackHistogram histogram;
  std::vector<FuzzFailure> failures;
  double wall_seconds = 0.0;   // not part of to_json
  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

FuzzReport run_fuzz(const FuzzOptions& opts);

/// Outcome of one trial; the fuzz loop and the tests share it.
struct TrialResult {
  std::optional<Scenario> scenario;
  double best_slack = 0.0;
  bool passed = false;
  std::string diagnostic;
};
TrialResult run_trial(FuzzKind kind, std::uint64_t trial_seed, const RngConfig& rng,
                      const Tolerance& tol, double pass_slack = -1e-9);

/// Independent containment decision by densely sampling every generator
/// circle and testing the target against the sampled convex polygon.
struct PolygonOracle {
  int samples_per_circle = 3600;
  bool circle_in_hull(const Circle2& target, std::span<const Circle2> gens) const;
};

struct OracleDisagreement {
  std::size_t index = 0;
  double exact_slack = 0.0;
  bool exact_contained = false;
};

struct OracleReport {
  std::size_t queries = 0;
  std::size_t agreements = 0;
  std::size_t contained = 0;
  double band = 1e-4;
  std::vector<OracleDisagreement> disagreements;
  /// Every disagreement lies within the band.
  bool passed() const;
  nlohmann::json to_json() const;
};

OracleReport run_oracle_check(std::size_t n, std::uint64_t seed, const Tolerance& tol = {},
                              double band = 1e-4, unsigned threads = 0);

/// Report wrappers for the fuzz and oracle verbs. Wall time stays out of
/// the JSON so reports are reproducible; it is appended to the summary.

RunOutcome fuzz_outcome(const FuzzReport& rep);
RunOutcome oracle_outcome(const OracleReport& rep);

/// CAROUSEL_THREADS when set to a positive integer, else 1.
unsigned default_threads();

}  // namespace carousel::harness

#endif  // CAROUSEL_HARNESS_FUZZ_HPP
