#ifndef CAROUSEL_WITNESS_HPP
#define CAROUSEL_WITNESS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "carousel/support_hull.hpp"

namespace carousel {

/// Three sites A0, A1, A2 and two circles U0, U1 inside their triangle.
struct CarouselInstance {
  std::array<Point2, 3> sites;
  std::array<Circle2, 2> u;
};

/// (j, k) such that U_{1-k} lies in conv(U_k and the sites other than A_j).
struct Witness {
  int j = 0;
  int k = 0;
  double slack = 0.0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class Tangency {
  NoneAtOne,   // inclusion holds on all of [0, 1]
  NoneAtZero,  // inclusion already fails for the centre points
  Leg,         // binding piece is a tangent segment through a site
  FrontArc,    // binding piece is the arc of U_k(xi)
  BaseSide,    // binding piece is the segment between the two sites
};

std::string_view to_string(Tangency t);

struct XiSweepReport {
  int j = 0;
  int k = 0;
  double xi_star = 1.0;
  double slack_at_xi_star = 0.0;
  Tangency tangency = Tangency::NoneAtOne;
  /// Upper end of the final bisection bracket (== xi_star when xi_star is 0 or 1).
  double xi_upper = 1.0;
  double slack_at_upper = 0.0;
};

/// Throws InvalidInstance unless the hypotheses hold: sites non-collinear
/// (or collinear with both radii 0) and both circles in the triangle.
void validate_instance(const CarouselInstance& inst, const Tolerance& tol = {});

/// Same sites; U_k replaced by the concentric circle of radius zeta * r_k.
CarouselInstance scaled_instance(const CarouselInstance& inst, double zeta);

/// Generators of W(j, k): U_k together with the two sites other than A_j.
GeneratorSet witness_generators(const CarouselInstance& inst, int j, int k);

/// All (j, k) pairs whose inclusion holds, sorted by descending slack.
std::vector<Witness> witness_search(const CarouselInstance& inst, const Tolerance& tol = {});

/// Circle-generator form: all (j, k) with U_{1-k} in conv(U_k and the c_i, i != j).
std::vector<Witness> corollary_witness_search(const std::array<Circle2, 3>& c,
                                              const std::array<Circle2, 2>& u,
                                              const Tolerance& tol = {});

/// Two distinct interior points of the triangle: the (j, k) picked by
/// splitting the triangle at b0. Slack is the re-verified circle_in_hull slack.
Witness two_carousel_points(const std::array<Point2, 3>& sites, Point2 b0, Point2 b1,
                            const Tolerance& tol = {});

/// Slack of the fixed-(j, k) inclusion at scale zeta.
double sweep_slack(const CarouselInstance& inst, int j, int k, double zeta);

/// Largest xi such that the fixed-(j, k) inclusion holds on [0, xi], to
/// bisection width tol, with the binding boundary piece when xi < 1.
XiSweepReport xi_sweep_fixed(const CarouselInstance& inst, int j, int k, double tol,
                             const Tolerance& eps = {});

/// Sampling ranges for random_instance.
struct RngConfig {
  double coord_min = -10.0;
  double coord_max = 10.0;
  double radius_min = 0.0;
  double radius_max = 3.0;
  double min_hypothesis_slack = 0.01;
  /// Reject site triangles with |area| below this.
  double min_triangle_area = 1.0;
  int max_rejections = 10'000;
};

/// Deterministic in seed. Throws GenerationExhausted after max_rejections.
CarouselInstance random_instance(std::uint64_t seed, const RngConfig& cfg = {});

/// Three circle generators and two circles inside their hull.
struct CorollaryInstance {
  std::array<Circle2, 3> c;
  std::array<Circle2, 2> u;
};

CorollaryInstance random_corollary_instance(std::uint64_t seed, const RngConfig& cfg = {});

/// Sites plus two distinct points strictly inside the triangle.
struct PointPairInstance {
  std::array<Point2, 3> sites;
  Point2 b0, b1;
};

PointPairInstance random_point_pair(std::uint64_t seed, const RngConfig& cfg = {});

}  // namespace carousel

#endif  // CAROUSEL_WITNESS_HPP
