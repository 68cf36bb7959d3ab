#pragma once

#include <cstddef>

#include "asymspec/matrix.hpp"

namespace asymspec {

/// Circle c + r e^{i theta} sampled at `nodes` equispaced angles.
struct ContourSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  std::size_t nodes = 256;
};

inline constexpr std::size_t kDefaultContourNodes = 256;
inline constexpr std::size_t kMinContourNodes = 64;

/// Throws BadParameter unless radius > 0 and nodes is a power of two >= 64.
void validate(const ContourSpec& contour);

}  // namespace asymspec
