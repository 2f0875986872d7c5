#include "carousel/arc_cover.hpp"

#include <algorithm>

#include "carousel/geom.hpp"

namespace carousel {

ArcInterval ArcInterval::range(double lo, double hi) {
  if (hi < lo) return empty();
  if (hi - lo >= kTwoPi) return full();
  return {Kind::Range, lo, hi};
}

bool ArcInterval::contains(double theta) const {
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::Range: break;
  }
  const double offset = normalize_angle(theta - lo);
  return offset <= hi - lo;
}

double AngularGap::midpoint() const { return normalize_angle(0.5 * (lo + hi)); }

void ArcCover::add(const ArcInterval& arc) {
  if (arc.is_empty() || full_) return;
  if (arc.is_full()) {
    full_ = true;
    pieces_.clear();
    return;
  }
  const double lo = normalize_angle(arc.lo);
  const double hi = lo + (arc.hi - arc.lo);
  if (hi <= kTwoPi) {
    pieces_.push_back({lo, hi});
  } else {
    pieces_.push_back({lo, kTwoPi});
    pieces_.push_back({0.0, hi - kTwoPi});
  }
  dirty_ = true;
}

void ArcCover::merge() const {
  if (!dirty_) return;
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<Piece> merged;
  for (const Piece& p : pieces_) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  pieces_ = std::move(merged);
  dirty_ = false;
}

bool ArcCover::covers_everything() const {
  if (full_) return true;
  merge();
  return pieces_.size() == 1 && pieces_.front().lo <= 0.0 && pieces_.front().hi >= kTwoPi;
}

std::vector<AngularGap> ArcCover::gaps() const {
  if (full_) return {};
  merge();
  if (pieces_.empty()) return {{0.0, kTwoPi}};
  std::vector<AngularGap> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    out.push_back({pieces_[i].hi, pieces_[i + 1].lo});
  }
  // wrap-around gap from the last piece back to the first
  const double tail = pieces_.back().hi;
  const double head = pieces_.front().lo + kTwoPi;
  if (head > tail) {
    if (tail >= kTwoPi) {
      out.push_back({tail - kTwoPi, head - kTwoPi});
    } else {
      out.push_back({tail, head});
    }
  }
  std::sort(out.begin(), out.end(), [](const AngularGap& a, const AngularGap& b) { return a.lo < b.lo; });
  return out;
}

std::vector<ArcInterval> ArcCover::components() const {
  if (full_) return {ArcInterval::full()};
  merge();
  std::vector<ArcInterval> out;
  for (const Piece& p : pieces_) out.push_back({ArcInterval::Kind::Range, p.lo, p.hi});
  return out;
}

}  // namespace carousel
