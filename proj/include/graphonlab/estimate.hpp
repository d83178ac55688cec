#pragma once

#include <cstdint>

#include "graphonlab/rng.hpp"

namespace graphonlab {

// A density value together with how it was obtained.  Quadrature results are
// exact (up to documented truncation tails) and carry zero standard error.
struct DensityEstimate {
  enum class Kind { monte_carlo, quadrature };

  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  Kind kind = Kind::monte_carlo;

  static DensityEstimate exact(double v) {
    return DensityEstimate{v, 0.0, 0, Kind::quadrature};
  }
  static DensityEstimate from_moments(const McMoments& m, double scale = 1.0) {
    return DensityEstimate{scale * m.mean(), std::abs(scale) * m.std_error(), m.n,
                           Kind::monte_carlo};
  }
};

}  // namespace graphonlab
