#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <span>
#include <string>

#include "chaoscope/errors.hpp"

namespace chaoscope {

// Largest map dimension the library handles. Built-in maps are 1-D and 2-D;
// the head-room is for synthetic test systems.
inline constexpr int kMaxDimension = 4;

// State of a discrete-time map: a short vector of finite doubles. Storage is
// inline so orbit iteration and tangent propagation never allocate.
class StateVector {
 public:
  StateVector() = default;

  StateVector(std::initializer_list<double> values) {
    if (values.size() > static_cast<std::size_t>(kMaxDimension))
      throw DimensionError("StateVector dimension exceeds " +
                           std::to_string(kMaxDimension));
    for (double v : values) c_[n_++] = v;
  }

  static StateVector zeros(int n) {
    StateVector s;
    if (n < 1 || n > kMaxDimension)
      throw DimensionError("StateVector dimension must be in [1, " +
                           std::to_string(kMaxDimension) + "]");
    s.n_ = n;
    return s;
  }

  int size() const noexcept { return n_; }

  double operator[](int i) const noexcept { return c_[i]; }
  double& operator[](int i) noexcept { return c_[i]; }

  std::span<const double> components() const noexcept { return {c_.data(), static_cast<std::size_t>(n_)}; }

  double norm() const noexcept {
    double sq = 0.0;
    for (int i = 0; i < n_; ++i) sq += c_[i] * c_[i];
    return std::sqrt(sq);
  }

  friend bool operator==(const StateVector& a, const StateVector& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDimension> c_{};
  int n_ = 0;
};

// Named parameter values as supplied by a caller (CLI, config, tests).
using ParameterMap = std::map<std::string, double>;

}  // namespace chaoscope
