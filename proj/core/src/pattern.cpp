#include "sparsebeam/pattern.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsebeam {

PhasePattern::PhasePattern(CVec weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("PhasePattern: empty weight vector");
  for (const auto& w : weights_) {
    if (std::abs(std::abs(w) - 1.0) > kUnitModulusTolerance) {
      throw std::invalid_argument("PhasePattern: weights must have unit modulus");
    }
  }
}

cplx PhasePattern::apply(std::span<const cplx> v) const {
  if (v.size() != weights_.size()) throw std::invalid_argument("PhasePattern::apply: size mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) acc += weights_[i] * v[i];
  return acc;
}

}  // namespace sparsebeam
