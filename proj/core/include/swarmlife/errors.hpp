#pragma once

#include <stdexcept>
#include <string>

namespace swarmlife {

// Raised for invalid parameters, mismatched capacities and unsupported
// scenario/seeding combinations.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace swarmlife
