#ifndef CAROUSEL_HARNESS_SVG_HPP
#define CAROUSEL_HARNESS_SVG_HPP

#include <string>

#include "carousel/harness/scenario.hpp"

namespace carousel::harness {

/// Static SVG figure for a scenario. World y points up; coordinates are
/// printed with three decimals so the output is byte-for-byte stable.
std::string render_svg(const Scenario& s);

}  // namespace carousel::harness

#endif  // CAROUSEL_HARNESS_SVG_HPP
