#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaoscope {

// A state, tangent vector, or matrix does not have the dimension an
// operation requires (e.g. a 2-D map passed to a 1-D estimator).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An orbit left the finite region tracked by the iterator. Carries the
// 1-based step index at which the escape was detected so partial results
// stay usable.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// A tangent vector or matrix product grew past the representable range.
// Usually means the renormalization interval is too long for the growth
// rate of the system.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// QR factorization found a diagonal entry of R below the rank tolerance.
class RankDeficiencyError : public std::runtime_error {
 public:
  static constexpr std::size_t kNoStep = static_cast<std::size_t>(-1);

  RankDeficiencyError(const std::string& what, int diagonal_index,
                      std::size_t step = kNoStep)
      : std::runtime_error(what), diagonal_index_(diagonal_index), step_(step) {}
  int diagonal_index() const noexcept { return diagonal_index_; }
  std::size_t step() const noexcept { return step_; }

 private:
  int diagonal_index_;
  std::size_t step_;
};

// Two trajectories collapsed onto each other, so no separation rate can be
// measured.
class ZeroSeparationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid value in a formula's mathematical domain (e.g. log of b <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace chaoscope
