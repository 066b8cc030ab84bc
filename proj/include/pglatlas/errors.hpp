#pragma once

#include <stdexcept>
#include <string>

namespace pglatlas {

/// A configured resource cap (closure size, census order) would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pglatlas
