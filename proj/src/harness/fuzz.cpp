#include "carousel/harness/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

#include "carousel/harness/reports.hpp"
#include "carousel/rng.hpp"

namespace carousel::harness {

using nlohmann::json;

std::string_view to_string(FuzzKind kind) {
  switch (kind) {
    case FuzzKind::Theorem2d: return "theorem2d";
    case FuzzKind::Corollary2d: return "corollary2d";
    case FuzzKind::Points2d: return "points2d";
  }
  return "unknown";
}

std::optional<FuzzKind> parse_fuzz_kind(std::string_view name) {
  if (name == "theorem2d") return FuzzKind::Theorem2d;
  if (name == "corollary2d") return FuzzKind::Corollary2d;
  if (name == "points2d") return FuzzKind::Points2d;
  return std::nullopt;
}

unsigned default_threads() {
  if (const char* env = std::getenv("CAROUSEL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  return 1;
}

namespace {

// Runs fn(i) for i in [0, n) on a small pool. Callers write results by index.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

const std::vector<double> kHistogramEdges = {-1e-9, 0.0, 1e-6, 1e-3, 1e-2, 1e-1, 1.0};

double best_of_pairs(const std::array<Circle2, 2>& u, const std::array<Circle2, 3>& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      std::vector<Circle2> gens{u[static_cast<std::size_t>(k)]};
      for (int i = 0; i < 3; ++i) {
        if (i != j) gens.push_back(c[static_cast<std::size_t>(i)]);
      }
      best = std::max(best, min_slack(u[static_cast<std::size_t>(1 - k)], GeneratorSet(std::move(gens))));
    }
  }
  return best;
}

}  // namespace

TrialResult run_trial(FuzzKind kind, std::uint64_t trial_seed, const RngConfig& rng,
                      const Tolerance& tol, double pass_slack) {
  TrialResult out;
  try {
    switch (kind) {
      case FuzzKind::Theorem2d: {
        const CarouselInstance inst = random_instance(trial_seed, rng);
        out.scenario = theorem_scenario(inst, trial_seed);
        const auto ws = witness_search(inst, tol);
        out.best_slack = ws.empty() ? best_of_pairs(inst.u, {point_circle(inst.sites[0]),
                                                              point_circle(inst.sites[1]),
                                                              point_circle(inst.sites[2])})
                                    : ws.front().slack;
        if (ws.empty()) out.diagnostic = "no witness pair";
        break;
      }
      case FuzzKind::Corollary2d: {
        const CorollaryInstance inst = random_corollary_instance(trial_seed, rng);
        out.scenario = corollary_scenario(inst, trial_seed);
        const auto ws = corollary_witness_search(inst.c, inst.u, tol);
        out.best_slack = ws.empty() ? best_of_pairs(inst.u, inst.c) : ws.front().slack;
        if (ws.empty()) out.diagnostic = "no witness pair";
        break;
      }
      case FuzzKind::Points2d: {
        const PointPairInstance inst = random_point_pair(trial_seed, rng);
        out.scenario = points_scenario(inst, trial_seed);
        const Witness w = two_carousel_points(inst.sites, inst.b0, inst.b1, tol);
        out.best_slack = w.slack;
        break;
      }
    }
  } catch (const Error& e) {
    out.best_slack = -std::numeric_limits<double>::infinity();
    out.diagnostic = e.what();
    return out;
  }
  out.passed = out.best_slack >= pass_slack;
  if (!out.passed && out.diagnostic.empty()) out.diagnostic = "best slack below threshold";
  return out;
}

json FuzzReport::to_json() const {
  json fails = json::array();
  for (const FuzzFailure& f : failures) {
    json fj = {{"index", f.index}, {"seed", f.seed}, {"diagnostic", f.diagnostic}};
    if (std::isfinite(f.best_slack)) fj["best_slack"] = f.best_slack;
    if (f.scenario) fj["scenario"] = harness::to_json(*f.scenario);
    fails.push_back(std::move(fj));
  }
  json out = {{"kind", to_string(kind)},
              {"trials", trials},
              {"seed", seed},
              {"failures", fails},
              {"histogram", {{"edges", histogram.edges}, {"counts", histogram.counts}}}};
  if (std::isfinite(min_best_slack)) out["min_best_slack"] = min_best_slack;
  return out;
}

FuzzReport run_fuzz(const FuzzOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialResult> results(opts.n);
  parallel_for(opts.n, opts.threads, [&](std::size_t i) {
    results[i] = run_trial(opts.kind, derive_seed(opts.seed, i), opts.rng, opts.tol, opts.pass_slack);
  });

  FuzzReport rep;
  rep.kind = opts.kind;
  rep.trials = opts.n;
  rep.seed = opts.seed;
  rep.histogram.edges = kHistogramEdges;
  rep.histogram.counts.assign(kHistogramEdges.size() + 1, 0);
  rep.min_best_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TrialResult& r = results[i];
    rep.min_best_slack = std::min(rep.min_best_slack, r.best_slack);
    const auto bin = std::upper_bound(kHistogramEdges.begin(), kHistogramEdges.end(), r.best_slack) -
                     kHistogramEdges.begin();
    ++rep.histogram.counts[static_cast<std::size_t>(bin)];
    if (!r.passed) rep.failures.push_back({i, derive_seed(opts.seed, i), r.scenario, r.best_slack, r.diagnostic});
  }
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const FuzzFailure& a, const FuzzFailure& b) { return a.seed < b.seed || (a.seed == b.seed && a.index < b.index); });

  if (opts.dump_dir && !rep.failures.empty()) {
    std::filesystem::create_directories(*opts.dump_dir);
    for (const FuzzFailure& f : rep.failures) {
      if (!f.scenario) continue;
      const auto path = *opts.dump_dir / (std::string(to_string(opts.kind)) + "-" + std::to_string(f.seed) + ".json");
      std::ofstream(path) << dump_scenario(*f.scenario);
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// sampling oracle

namespace {

std::vector<Point2> monotone_chain(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

bool PolygonOracle::circle_in_hull(const Circle2& target, std::span<const Circle2> gens) const {
  std::vector<Point2> pts;
  for (const Circle2& g : gens) {
    if (g.radius == 0.0) {
      pts.push_back(g.center);
      continue;
    }
    for (int i = 0; i < samples_per_circle; ++i) {
      pts.push_back(g.center + g.radius * direction(kTwoPi * i / samples_per_circle));
    }
  }
  const std::vector<Point2> hull = monotone_chain(std::move(pts));
  if (hull.size() < 3) {
    if (target.radius > 0.0) return false;
    if (hull.size() == 1) return dist(hull[0], target.center) <= 1e-12;
    return segment_distance(target.center, hull[0], hull[1]) <= 1e-12;
  }
  // counterclockwise hull: the target fits iff its centre is at least r inside every edge line
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i];
    const Point2 b = hull[(i + 1) % hull.size()];
    const double inside = cross(b - a, target.center - a) / dist(a, b);
    if (inside < target.radius) return false;
  }
  return true;
}

bool OracleReport::passed() const {
  return std::all_of(disagreements.begin(), disagreements.end(),
                     [&](const OracleDisagreement& d) { return std::abs(d.exact_slack) <= band; });
}

json OracleReport::to_json() const {
  json dis = json::array();
  for (const auto& d : disagreements) {
    dis.push_back({{"index", d.index}, {"exact_slack", d.exact_slack}, {"exact_contained", d.exact_contained}});
  }
  return {{"queries", queries},
          {"agreements", agreements},
          {"contained", contained},
          {"band", band},
          {"disagreements", dis},
          {"passed", passed()}};
}

OracleReport run_oracle_check(std::size_t n, std::uint64_t seed, const Tolerance& tol, double band,
                              unsigned threads) {
  struct Query {
    bool exact = false;
    bool oracle = false;
    double slack = 0.0;
  };
  std::vector<Query> results(n);
  const PolygonOracle oracle;
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const int m = 2 + static_cast<int>(rng.below(3));
    std::vector<Circle2> gens;
    for (int g = 0; g < m; ++g) {
      const double r = rng.unit() < 0.2 ? 0.0 : rng.uniform(0.0, 3.0);
      gens.push_back({{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)}, r});
    }
    // target centre is a random convex combination, so both verdicts occur
    std::vector<double> w(gens.size());
    double total = 0.0;
    for (double& x : w) total += (x = rng.unit() + 1e-3);
    Point2 c{};
    for (std::size_t g = 0; g < gens.size(); ++g) c = c + (w[g] / total) * gens[g].center;
    const Circle2 target{c + Point2{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.0, 3.0)};
    const auto exact = carousel::circle_in_hull(target, GeneratorSet(gens), tol);
    results[i] = {exact.contained, oracle.circle_in_hull(target, gens), exact.slack};
  });

  OracleReport rep;
  rep.queries = n;
  rep.band = band;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].exact) ++rep.contained;
    if (results[i].exact == results[i].oracle) {
      ++rep.agreements;
    } else {
      rep.disagreements.push_back({i, results[i].slack, results[i].exact});
    }
  }
  return rep;
}

RunOutcome fuzz_outcome(const FuzzReport& rep) {
  json out = report_header("fuzz");
  out["kind"] = to_string(rep.kind);
  out["fuzz"] = rep.to_json();
  std::string summary = "fuzz " + std::string(to_string(rep.kind)) + ": " + std::to_string(rep.trials) +
                        " trial(s), " + std::to_string(rep.failures.size()) + " failure(s)";
  if (std::isfinite(rep.min_best_slack)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ", smallest best slack %.6g", rep.min_best_slack);
    summary += buf;
  }
  summary += "\n";
  for (const FuzzFailure& f : rep.failures) {
    summary += "  seed " + std::to_string(f.seed) + ": " + f.diagnostic + "\n";
  }
  return finish_outcome(std::move(out), rep.passed() ? kVerified : kRefuted, summary);
}

RunOutcome oracle_outcome(const OracleReport& rep) {
  json out = report_header("oracle");
  out["oracle"] = rep.to_json();
  double band = 0.0;
  for (const auto& d : rep.disagreements) band = std::max(band, std::abs(d.exact_slack));
  char buf[160];
  std::snprintf(buf, sizeof buf, "oracle: %zu/%zu agree (%zu contained), largest |slack| among disagreements %.3g\n",
                rep.agreements, rep.queries, rep.contained, band);
  return finish_outcome(std::move(out), rep.passed() ? kVerified : kRefuted, buf);
}

}  // namespace carousel::harness
