#pragma once

#include <cstddef>
#include <span>

#include "sparsebeam/fourier.hpp"

namespace sparsebeam {

/// One setting of the phase shifters: a unit-modulus weight per antenna.
class PhasePattern {
 public:
  /// Throws std::invalid_argument unless every |w_i| = 1 within 1e-9.
  explicit PhasePattern(CVec weights);

  std::size_t n() const noexcept { return weights_.size(); }
  std::span<const cplx> weights() const noexcept { return weights_; }
  cplx operator[](std::size_t i) const noexcept { return weights_[i]; }

  /// a . v  (no conjugation; the pattern already carries the phases).
  cplx apply(std::span<const cplx> v) const;

 private:
  CVec weights_;
};

inline constexpr double kUnitModulusTolerance = 1e-9;

}  // namespace sparsebeam
