#pragma once

#include <stdexcept>
#include <string>

namespace isac {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutsideRoiError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace isac
