#include <doctest.h>

#include <cmath>
#include <numbers>

#include "carousel/geom.hpp"
#include "carousel/rng.hpp"
#include "properties.hpp"
#include "test_util.hpp"

using namespace carousel;

namespace {

bool near(Point2 a, Point2 b, double eps = 1e-12) { return dist(a, b) <= eps; }

}  // namespace

TEST_CASE("homothety_apply") {
  CHECK(homothety_apply({{0, 0}, 1}, Point2{3, 4}) == Point2{3, 4});
  CHECK(homothety_apply({{0, 0}, 2}, Point2{1, 0}) == Point2{2, 0});
  CHECK(near(homothety_apply({{2, 0}, 3}, Point2{0, 1}), {-4, 3}));
  // barycentric form: the centre, the point and the image are collinear with the right ratio
  const Point2 p{2, 0}, x{0, 1}, y = homothety_apply({p, 3}, x);
  CHECK(std::abs(cross(x - p, y - p)) < 1e-12);
  CHECK(dist(y, p) == doctest::Approx(3 * dist(x, p)));
}

TEST_CASE("homothety of a circle") {
  const Circle2 c{{1, 2}, 0.5};
  const Homothety h{{-1, 3}, 2.5};
  const Circle2 img = homothety_apply(h, c);
  CHECK(img.radius == doctest::Approx(1.25));
  for (int i = 0; i < 36; ++i) {
    const Point2 x = c.center + c.radius * direction(i * std::numbers::pi / 18);
    CHECK(std::abs(dist(homothety_apply(h, x), img.center) - img.radius) < 1e-12);
  }
}

TEST_CASE("homothety_conjugate") {
  SUBCASE("probe") {
    const auto c = homothety_conjugate({0, 0}, 2, {1, 0}, 3);
    CHECK(near(c.image_center, {2, 0}));
    CHECK(near(c.lhs({0, 1}), {-4, 6}));
    CHECK(near(c.rhs({0, 1}), {-4, 6}));
    CHECK(approx_equal(c.lhs, c.rhs, 1e-12));
  }
  SUBCASE("identity first factor") {
    const auto c = homothety_conjugate({5, -1}, 1, {2, 3}, 0.5);
    CHECK(near(c.image_center, {2, 3}));
    CHECK(approx_equal(c.lhs, AffineSimilarity::from({{2, 3}, 0.5}), 1e-12));
    CHECK(approx_equal(c.rhs, AffineSimilarity::from({{2, 3}, 0.5}), 1e-12));
  }
  SUBCASE("identity second factor") {
    const auto c = homothety_conjugate({5, -1}, 4, {2, 3}, 1);
    CHECK(approx_equal(c.lhs, AffineSimilarity::from({{5, -1}, 4}), 1e-12));
    CHECK(approx_equal(c.rhs, AffineSimilarity::from({{5, -1}, 4}), 1e-12));
  }
  SUBCASE("ratio product one is a translation") {
    const auto t = compose(AffineSimilarity::from({{0, 0}, 2}), AffineSimilarity::from({{1, 0}, 0.5}));
    CHECK(t.is_translation());
    const auto h = compose(AffineSimilarity::from({{0, 0}, 2}), AffineSimilarity::from({{1, 0}, 3}));
    CHECK_FALSE(h.is_translation());
    const Homothety hh = h.as_homothety();
    CHECK(near(h(hh.center), hh.center, 1e-12));
    CHECK(hh.ratio == doctest::Approx(6));
  }
  CHECK(code_of([] { homothety_conjugate({0, 0}, 0, {1, 1}, 2); }) == ErrorCode::InvalidArgument);
  SUBCASE("random") {
    for (std::uint64_t s = 0; s < 500; ++s) CHECK(props::conjugation_error(derive_seed(11, s)) < 1e-9);
  }
}

TEST_CASE("tangent_points_from_point") {
  const auto [t1, t2] = tangent_points_from_point({0, 0}, {{5, 0}, 3});
  CHECK(near(t1, {3.2, 2.4}));
  CHECK(near(t2, {3.2, -2.4}));
  CHECK(code_of([] { tangent_points_from_point({0, 0}, {{2, 0}, 2}); }) == ErrorCode::FocusInsideOrOn);
  CHECK(code_of([] { tangent_points_from_point({0, 0}, {{1, 0}, 0}); }) == ErrorCode::DegenerateRadius);
  CHECK(code_of([] { tangent_points_from_point({0.5, 0}, {{1, 0}, 1}); }) == ErrorCode::FocusInsideOrOn);

  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Circle2 c{{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.01, 3)};
    const double ratio = rng.uniform(1.01, 100);
    const Point2 f = c.center + ratio * c.radius * direction(rng.uniform(0, 2 * std::numbers::pi));
    const auto [a, b] = tangent_points_from_point(f, c);
    for (const Point2 t : {a, b}) {
      CHECK(std::abs(dist(t, c.center) - c.radius) < 1e-12 * std::max(1.0, ratio * c.radius));
      CHECK(std::abs(dot(t - f, t - c.center)) < 1e-12 * std::max(1.0, ratio * c.radius * c.radius));
    }
    CHECK(cross(c.center - f, a - f) > 0);   // first tangent point is counterclockwise
  }
}

TEST_CASE("external_homothety_center") {
  const Point2 f = external_homothety_center({{0, 0}, 1}, {{3, 0}, 2});
  CHECK(near(f, {-3, 0}));
  const Circle2 img = homothety_apply({f, 2.0}, Circle2{{0, 0}, 1});
  CHECK(near(img.center, {3, 0}));
  CHECK(img.radius == doctest::Approx(2));
  CHECK(code_of([] { external_homothety_center({{0, 0}, 1}, {{5, 0}, 1}); }) == ErrorCode::EqualRadii);
  CHECK(code_of([] { external_homothety_center({{0, 0}, 3}, {{0.5, 0}, 1}); }) == ErrorCode::NestedCircles);
  CHECK(code_of([] { external_homothety_center({{0, 0}, 0}, {{5, 0}, 1}); }) == ErrorCode::DegenerateRadius);
}

TEST_CASE("reangle_contains") {
  const Circle2 c{{3, 0}, 1};
  CHECK(reangle_contains({0, 0}, c, {3, 0}));
  CHECK_FALSE(reangle_contains({0, 0}, c, {1, 0}));
  CHECK_FALSE(reangle_contains({0, 0}, c, {0, 5}));
  CHECK(reangle_contains({0, 0}, c, {100, 0}));
  CHECK_FALSE(reangle_contains({0, 0}, c, {0, 0}));
  CHECK(code_of([&] { reangle_contains({3, 0.5}, c, {5, 0}); }) == ErrorCode::FocusInsideOrOn);

  SUBCASE("rasterised definition") {
    // direct definition: inside the tangent cone and the segment from F meets the disk
    const Point2 f{0, 0};
    const double half = std::asin(c.radius / dist(f, c.center));
    int mismatches = 0, checked = 0;
    for (double x = -1; x <= 12; x += 0.05) {
      for (double y = -6; y <= 6; y += 0.05) {
        const Point2 p{x, y};
        if (norm(p) < 1e-9) continue;
        const double ang = std::abs(std::atan2(p.y, p.x));
        const bool in_cone = ang <= half;
        const bool hits = segment_distance(c.center, f, p) <= c.radius;
        const double sd = reangle_signed_distance(f, c, p);
        if (std::abs(sd) < 1e-6) continue;
        ++checked;
        if ((in_cone && hits) != reangle_contains(f, c, p)) ++mismatches;
        if ((sd < 0) != reangle_contains(f, c, p)) ++mismatches;
      }
    }
    CHECK(checked > 10000);
    CHECK(mismatches == 0);
  }

  SUBCASE("disk inside, focus outside, similarity invariant") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
      const Circle2 cc{{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.1, 2)};
      const Point2 f = cc.center + rng.uniform(1.05, 6) * cc.radius * direction(rng.uniform(0, 7));
      const Point2 inside = cc.center + rng.unit() * cc.radius * direction(rng.uniform(0, 7));
      CHECK(reangle_contains(f, cc, inside));
      CHECK_FALSE(reangle_contains(f, cc, f));
      const Point2 x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
      const double s = rng.uniform(0.2, 5), rot = rng.uniform(0, 7);
      const Point2 shift{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      auto map = [&](Point2 p) {
        const Point2 r{std::cos(rot) * p.x - std::sin(rot) * p.y, std::sin(rot) * p.x + std::cos(rot) * p.y};
        return s * r + shift;
      };
      if (std::abs(reangle_signed_distance(f, cc, x)) > 1e-6) {
        CHECK(reangle_contains(f, cc, x) == reangle_contains(map(f), {map(cc.center), s * cc.radius}, map(x)));
      }
    }
  }
}

TEST_CASE("perspectivity inclusion") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto out = props::perspectivity_trial(derive_seed(21, s));
    CHECK(out.violations == 0);
    CHECK(out.min_clearance > 1e-9);
  }
}

TEST_CASE("internally tangent scaling") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto out = props::tangent_scaling_trial(derive_seed(31, s));
    CHECK(out.max_signed < -1e-9);
    CHECK(out.smaller_inside);
  }
}

TEST_CASE("orientation") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orientation({0, 0}, {1, 0}, {2, 1e-10}) == 0);
}

TEST_CASE("tolerance validation") {
  CHECK(code_of([] { Tolerance{1e-6, 1e-9}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Tolerance{0, 1e-6}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK_FALSE(code_of([] { Tolerance{}.validate(); }));
}

TEST_CASE("angles") {
  CHECK(polar_angle({1, 0}) == 0.0);
  CHECK(polar_angle({0, -1}) == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(normalize_angle(-0.5) == doctest::Approx(2 * std::numbers::pi - 0.5));
  CHECK(normalize_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
}
