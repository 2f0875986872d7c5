#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "carousel/rng.hpp"
#include "carousel/witness.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace carousel;

namespace {

bool has(const std::vector<Witness>& ws, int j, int k) {
  return std::any_of(ws.begin(), ws.end(), [&](const Witness& w) { return w.j == j && w.k == k; });
}

const std::array<Point2, 3> kTri6 = {Point2{0, 0}, Point2{6, 0}, Point2{0, 6}};
const std::array<Point2, 3> kTri4 = {Point2{0, 0}, Point2{4, 0}, Point2{0, 4}};

}  // namespace

TEST_CASE("scaled_instance") {
  const CarouselInstance inst{kTri6, {Circle2{{2, 2}, 1}, Circle2{{1, 3}, 0.4}}};
  const auto one = scaled_instance(inst, 1.0);
  CHECK(one.u[0] == inst.u[0]);
  CHECK(one.u[1] == inst.u[1]);
  const auto zero = scaled_instance(inst, 0.0);
  CHECK(zero.u[0] == Circle2{{2, 2}, 0});
  CHECK(zero.u[1] == Circle2{{1, 3}, 0});
  CHECK(scaled_instance(inst, 0.5).u[0] == Circle2{{2, 2}, 0.5});
  CHECK(code_of([&] { scaled_instance(inst, 1.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("witness_search examples") {
  SUBCASE("equal circles") {
    const auto ws = witness_search({kTri6, {Circle2{{2, 2}, 0.5}, Circle2{{2, 2}, 0.5}}});
    CHECK(ws.size() == 6);
  }
  SUBCASE("concentric smaller circle") {
    const auto ws = witness_search({kTri6, {Circle2{{2, 2}, 1}, Circle2{{2, 2}, 0.5}}});
    for (int j = 0; j < 3; ++j) CHECK(has(ws, j, 0));
  }
  SUBCASE("points") {
    const auto ws = witness_search({kTri4, {point_circle({1, 1}), point_circle({2, 1})}});
    CHECK(has(ws, 0, 0));
    CHECK(oracle::in_triangle({2, 1}, {1, 1}, {4, 0}, {0, 4}));
  }
  SUBCASE("sorted by slack and re-verifiable") {
    const CarouselInstance inst{kTri6, {Circle2{{3, 1.5}, 1}, Circle2{{1.5, 1.5}, 1}}};
    const auto ws = witness_search(inst);
    REQUIRE_FALSE(ws.empty());
    for (std::size_t i = 1; i < ws.size(); ++i) CHECK(ws[i - 1].slack >= ws[i].slack);
    for (const Witness& w : ws) {
      const auto r = circle_in_hull(inst.u[static_cast<std::size_t>(1 - w.k)], witness_generators(inst, w.j, w.k));
      CHECK(r.contained);
      CHECK(r.slack == doctest::Approx(w.slack));
    }
  }
  SUBCASE("hypothesis violations") {
    CHECK(code_of([] { witness_search({kTri4, {Circle2{{1, 1}, 2}, point_circle({1, 1})}}); }) ==
          ErrorCode::InvalidInstance);
    CHECK(code_of([] { witness_search({kTri4, {point_circle({5, 5}), point_circle({1, 1})}}); }) ==
          ErrorCode::InvalidInstance);
    // collinear sites are fine for points only
    const std::array<Point2, 3> line = {Point2{0, 0}, Point2{1, 0}, Point2{2, 0}};
    CHECK_FALSE(witness_search({line, {point_circle({0.5, 0}), point_circle({1.5, 0})}}).empty());
    CHECK(code_of([&] { witness_search({line, {Circle2{{0.5, 0}, 0.1}, point_circle({1.5, 0})}}); }) ==
          ErrorCode::InvalidInstance);
  }
}

TEST_CASE("corollary_witness_search") {
  SUBCASE("point generators reduce to the theorem") {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
      const CarouselInstance inst = random_instance(rng.next());
      const auto a = witness_search(inst);
      const auto b = corollary_witness_search(
          {point_circle(inst.sites[0]), point_circle(inst.sites[1]), point_circle(inst.sites[2])}, inst.u);
      REQUIRE(a.size() == b.size());
      for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a[t].j == b[t].j);
        CHECK(a[t].k == b[t].k);
      }
    }
  }
  SUBCASE("equal circles") {
    const std::array<Circle2, 3> c = {Circle2{{0, 0}, 1}, Circle2{{8, 0}, 1}, Circle2{{0, 8}, 1}};
    CHECK(corollary_witness_search(c, {Circle2{{2, 2}, 0.5}, Circle2{{2, 2}, 0.5}}).size() == 6);
  }
  SUBCASE("circle generators") {
    const std::array<Circle2, 3> c = {Circle2{{0, 0}, 1}, Circle2{{8, 0}, 1}, Circle2{{0, 8}, 1}};
    const std::array<Circle2, 2> u = {Circle2{{2, 2}, 0.5}, Circle2{{3, 2}, 0.5}};
    const auto ws = corollary_witness_search(c, u);
    CHECK_FALSE(ws.empty());
    // every pair checked against the sampled support oracle
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 2; ++k) {
        std::vector<Circle2> gens{u[static_cast<std::size_t>(k)]};
        for (int i = 0; i < 3; ++i) {
          if (i != j) gens.push_back(c[static_cast<std::size_t>(i)]);
        }
        const double s = oracle::sampled_min_slack(u[static_cast<std::size_t>(1 - k)], gens);
        if (std::abs(s) > 1e-6) CHECK(has(ws, j, k) == (s > 0));
      }
    }
    // frozen from the oracle above
    CHECK(ws.size() == 2);
    CHECK(has(ws, 1, 1));
    CHECK(has(ws, 0, 0));
    CHECK(ws[0].slack == doctest::Approx(0.664725).epsilon(1e-5));
  }
  SUBCASE("hypothesis") {
    const std::array<Circle2, 3> c = {Circle2{{0, 0}, 1}, Circle2{{8, 0}, 1}, Circle2{{0, 8}, 1}};
    CHECK(code_of([&] { corollary_witness_search(c, {Circle2{{20, 2}, 0.5}, Circle2{{3, 2}, 0.5}}); }) ==
          ErrorCode::InvalidInstance);
  }
}

TEST_CASE("two_carousel_points") {
  SUBCASE("sub-triangle case") {
    const Witness w = two_carousel_points(kTri4, {1, 1}, {2, 1});
    CHECK(w.j == 0);
    CHECK(w.k == 0);
    CHECK(w.slack > 0);
  }
  SUBCASE("interior point off every spoke") {
    const Witness w = two_carousel_points(kTri4, {1, 1}, {1.5, 1.2});
    CHECK(w.k == 0);
    std::vector<Point2> tri{{1, 1}};
    for (int i = 0; i < 3; ++i) {
      if (i != w.j) tri.push_back(kTri4[static_cast<std::size_t>(i)]);
    }
    CHECK(oracle::in_triangle({1.5, 1.2}, tri[0], tri[1], tri[2]));
  }
  SUBCASE("spoke case") {
    const Witness w = two_carousel_points(kTri4, {1, 1}, {0.5, 0.5});
    CHECK(w.j == 0);
    CHECK(w.k == 1);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { two_carousel_points(kTri4, {1, 1}, {1, 1}); }) == ErrorCode::CoincidentPoints);
    CHECK(code_of([] { two_carousel_points(kTri4, {1, 1}, {3, 3}); }) == ErrorCode::NotInterior);
    CHECK(code_of([] { two_carousel_points(kTri4, {0, 1}, {1, 1}); }) == ErrorCode::NotInterior);
  }
  SUBCASE("random pairs re-verify") {
    for (std::uint64_t s = 0; s < 500; ++s) {
      const auto inst = random_point_pair(derive_seed(3, s));
      const Witness w = two_carousel_points(inst.sites, inst.b0, inst.b1);
      const Point2 bk = w.k == 0 ? inst.b0 : inst.b1, other = w.k == 0 ? inst.b1 : inst.b0;
      std::vector<Point2> tri{bk};
      for (int i = 0; i < 3; ++i) {
        if (i != w.j) tri.push_back(inst.sites[static_cast<std::size_t>(i)]);
      }
      CHECK(oracle::in_triangle(other, tri[0], tri[1], tri[2], 1e-9));
      CHECK(w.slack >= -1e-9);
    }
  }
}

TEST_CASE("point on the triangle side is rejected") {
  CHECK(code_of([] { two_carousel_points(kTri4, {1, 1}, {2, 2}); }) == ErrorCode::NotInterior);
}

TEST_CASE("random_instance") {
  const auto a = random_instance(42), b = random_instance(42);
  CHECK(a.sites == b.sites);
  CHECK(a.u[0] == b.u[0]);
  CHECK(a.u[1] == b.u[1]);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = random_instance(s);
    const GeneratorSet tri{point_circle(inst.sites[0]), point_circle(inst.sites[1]), point_circle(inst.sites[2])};
    CHECK(min_slack(inst.u[0], tri) > 0.01);
    CHECK(min_slack(inst.u[1], tri) > 0.01);
  }
  RngConfig cfg;
  cfg.radius_min = cfg.radius_max = 0.0;
  const auto p = random_instance(9, cfg);
  CHECK(p.u[0].radius == 0.0);
  CHECK(p.u[1].radius == 0.0);
  CHECK_FALSE(witness_search(p).empty());
}

TEST_CASE("points shortcut is consistent with witness_search") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    RngConfig cfg;
    auto inst = random_instance(derive_seed(8, s), cfg);
    inst.u[1].radius = 0.0;
    const auto ws = witness_search(inst);
    REQUIRE_FALSE(ws.empty());
    const Witness w = two_carousel_points(inst.sites, inst.u[0].center, inst.u[1].center);
    // the point-only witness stays valid once U0 regains its radius when k = 0 ...
    if (w.k == 0) CHECK(has(ws, w.j, 0));
  }
}

TEST_CASE("xi_sweep_fixed") {
  SUBCASE("concentric circles") {
    const CarouselInstance inst{kTri6, {Circle2{{2, 2}, 1}, Circle2{{2, 2}, 0.5}}};
    for (int j = 0; j < 3; ++j) {
      const auto r = xi_sweep_fixed(inst, j, 0, 1e-9);
      CHECK(r.xi_star == 1.0);
      CHECK(r.tangency == Tangency::NoneAtOne);
    }
  }
  SUBCASE("crossing") {
    const CarouselInstance inst{kTri6, {Circle2{{1, 2}, 0.5}, Circle2{{2, 2}, 1}}};
    const auto r = xi_sweep_fixed(inst, 0, 0, 1e-9);
    CHECK(r.xi_star < 1.0);
    CHECK(std::abs(r.slack_at_xi_star) < 1e-6);
    CHECK(r.xi_upper - r.xi_star <= 1e-9);
    const auto g = oracle::grid_scan(inst, 0, 0);
    CHECK(r.xi_star >= g.last_good - 2e-9);
    CHECK(r.xi_star <= g.first_bad + 2e-9);
    CHECK(r.tangency != Tangency::NoneAtOne);
  }
  SUBCASE("points make the sweep constant") {
    const CarouselInstance inst{kTri4, {point_circle({1, 1}), point_circle({2, 1})}};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 2; ++k) {
        const auto r = xi_sweep_fixed(inst, j, k, 1e-9);
        CHECK((r.xi_star == 1.0 || r.xi_star == 0.0));
      }
    }
  }
  SUBCASE("continuity and consistency") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      RngConfig cfg;
      cfg.radius_min = 0.2;
      const auto inst = random_instance(derive_seed(12, s), cfg);
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 2; ++k) {
          const auto r = xi_sweep_fixed(inst, j, k, 1e-9);
          if (r.tangency == Tangency::NoneAtZero) {
            CHECK(r.xi_star == 0.0);
            CHECK(sweep_slack(inst, j, k, 0.0) < 0.0);
          } else {
            CHECK(sweep_slack(inst, j, k, std::max(0.0, r.xi_star - 1e-9)) >= -1e-6);
          }
          if (r.tangency != Tangency::NoneAtOne && r.tangency != Tangency::NoneAtZero) {
            CHECK(sweep_slack(inst, j, k, std::min(1.0, r.xi_star + 1e-9)) < 1e-6);
            CHECK(std::abs(r.slack_at_xi_star) < 1e-6);
          }
          double prev = sweep_slack(inst, j, k, 0.0);
          for (int i = 1; i <= 200; ++i) {
            const double cur = sweep_slack(inst, j, k, i / 200.0);
            CHECK(std::abs(cur - prev) < 0.1);   // Lipschitz in zeta with constant at most r_0 + r_1 <= 6
            prev = cur;
          }
        }
      }
    }
  }
  SUBCASE("argument checks") {
    const CarouselInstance inst{kTri6, {Circle2{{2, 2}, 1}, Circle2{{2, 2}, 0.5}}};
    CHECK(code_of([&] { xi_sweep_fixed(inst, 3, 0, 1e-9); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { xi_sweep_fixed(inst, 0, 0, 0.0); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("goodset is downward closed on a grid") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    RngConfig cfg;
    cfg.radius_min = 0.2;
    const auto inst = random_instance(derive_seed(13, s), cfg);
    bool seen_bad = false;
    for (int i = 100; i >= 0; --i) {
      const CarouselInstance z = scaled_instance(inst, i / 100.0);
      const bool good = !witness_search(z).empty();
      CHECK(good);   // the existential predicate holds at every scale
      if (!good) seen_bad = true;
    }
    CHECK_FALSE(seen_bad);
  }
}
