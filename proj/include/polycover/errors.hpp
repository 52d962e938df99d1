#pragma once

#include <stdexcept>
#include <string>

namespace polycover {

// Thrown when a requested computation exceeds a declared size guard.
// Guards refuse explicitly instead of truncating silently.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polycover
