#ifndef CAROUSEL_ARC_COVER_HPP
#define CAROUSEL_ARC_COVER_HPP

#include <vector>

namespace carousel {

/// Closed arc {theta mod 2pi : lo <= theta <= hi} of the direction circle,
/// or one of the two distinguished sets.
struct ArcInterval {
  enum class Kind { Empty, Full, Range };

  Kind kind = Kind::Empty;
  double lo = 0.0;
  double hi = 0.0;

  static ArcInterval empty() { return {}; }
  static ArcInterval full() { return {Kind::Full, 0.0, 0.0}; }
  /// hi - lo must lie in [0, 2pi); wider ranges collapse to full().
  static ArcInterval range(double lo, double hi);

  bool is_empty() const { return kind == Kind::Empty; }
  bool is_full() const { return kind == Kind::Full; }
  bool contains(double theta) const;
};

/// Open angular interval (lo, hi) in the plain reals with 0 <= lo < 2pi and
/// lo < hi <= lo + 2pi. Used for uncovered gaps.
struct AngularGap {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double midpoint() const;
};

/// Union of closed arcs on the direction circle.
class ArcCover {
 public:
  void add(const ArcInterval& arc);

  bool covers_everything() const;

  /// Maximal uncovered open intervals, sorted by lo.
  std::vector<AngularGap> gaps() const;

  /// Merged covered pieces as closed [lo, hi] pairs within [0, 2pi].
  std::vector<ArcInterval> components() const;

 private:
  struct Piece {
    double lo, hi;
  };
  void merge() const;

  bool full_ = false;
  mutable bool dirty_ = false;
  mutable std::vector<Piece> pieces_;
};

}  // namespace carousel

#endif  // CAROUSEL_ARC_COVER_HPP
