#ifndef CAROUSEL_TESTS_UTIL_HPP
#define CAROUSEL_TESTS_UTIL_HPP

#include <optional>

#include "carousel/errors.hpp"

/// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<carousel::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const carousel::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#endif  // CAROUSEL_TESTS_UTIL_HPP
