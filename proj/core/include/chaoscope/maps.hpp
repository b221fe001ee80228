#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoscope/matrix.hpp"
#include "chaoscope/state.hpp"

namespace chaoscope {

// Orbit points with any coordinate beyond this magnitude count as escaped.
// Far outside the basin of every built-in attractor.
inline constexpr double kDivergenceThreshold = 1e10;

// Which partial derivatives the Jacobian rule returns. The two modes differ
// only for the Hénon map: `corrected` is the analytic derivative of the
// update rule, `paper_compat` reproduces the -2x entry used by the reference
// results this library is validated against (instead of the analytic -2ax).
enum class JacobianMode {
  corrected,
  paper_compat,
};

std::string_view to_string(JacobianMode mode);

// One named parameter of a map. The soft range only produces warnings: the
// update rules are defined for all finite values, the range is where the
// standard invariants (e.g. unit-interval confinement) hold.
struct ParameterSlot {
  std::string name;
  double default_value = 0.0;
  std::optional<double> soft_min;
  std::optional<double> soft_max;
};

// A named discrete-time map: dimension, parameter schema, update rule and
// Jacobian rule. Rules are pure functions of (state, parameters).
class MapDefinition {
 public:
  using UpdateRule =
      std::function<StateVector(const StateVector&, std::span<const double>)>;
  using JacobianRule = std::function<SquareMatrix(
      const StateVector&, std::span<const double>, JacobianMode)>;

  MapDefinition(std::string name, int dimension,
                std::vector<ParameterSlot> schema, UpdateRule update,
                JacobianRule jacobian);

  const std::string& name() const noexcept { return name_; }
  int dimension() const noexcept { return dimension_; }
  const std::vector<ParameterSlot>& parameter_schema() const noexcept {
    return schema_;
  }

  StateVector apply(const StateVector& x, std::span<const double> params) const {
    return update_(x, params);
  }

  SquareMatrix jacobian(const StateVector& x, std::span<const double> params,
                        JacobianMode mode) const {
    return jacobian_(x, params, mode);
  }

 private:
  std::string name_;
  int dimension_;
  std::vector<ParameterSlot> schema_;
  UpdateRule update_;
  JacobianRule jacobian_;
};

// Recorded orbit. Step 0 is the initial state; states[k-1] holds step k,
// i.e. f^k(x0). If diverged_at is set, recording stopped at that step and
// its state is the last entry.
struct Trajectory {
  std::string map_name;
  std::vector<double> parameters;
  StateVector initial_state;
  std::vector<StateVector> states;
  std::optional<std::size_t> diverged_at;

  std::size_t steps() const noexcept { return states.size(); }

  const StateVector& state_at_step(std::size_t k) const {
    return k == 0 ? initial_state : states.at(k - 1);
  }
};

// x -> r x (1 - x)
double logistic_apply(double x, double r);

// d/dx of the logistic update: r (1 - 2x)
double logistic_derivative(double x, double r);

// (x, y) -> (1 + y - a x^2, b x)
std::pair<double, double> henon_apply(double x, double y, double a, double b);

// [[-2ax, 1], [b, 0]] in corrected mode, [[-2x, 1], [b, 0]] in paper_compat
// mode. The determinant is -b either way.
SquareMatrix henon_jacobian(double x, double a, double b, JacobianMode mode);

const MapDefinition& logistic_map();
const MapDefinition& henon_map();

// nullptr when the name is not registered.
const MapDefinition* find_map(std::string_view name);
std::vector<std::string> builtin_map_names();

// Parameters resolved against a map's schema, in schema order.
struct BoundParameters {
  std::vector<double> values;
  std::vector<std::string> warnings;  // soft-range violations

  std::span<const double> span() const noexcept { return values; }
};

// Fills defaults for missing slots and collects soft-range warnings.
// Unknown parameter names throw std::invalid_argument.
BoundParameters bind_parameters(const MapDefinition& map,
                                const ParameterMap& params);

// Iterates the map `steps` times from x0. With record on, every state is
// kept; otherwise only the final one. Escape past kDivergenceThreshold (or a
// non-finite coordinate) sets diverged_at and stops the orbit; it is not an
// error so partial data stays usable.
Trajectory iterate_map(const MapDefinition& map, std::span<const double> params,
                       const StateVector& x0, std::size_t steps,
                       bool record = true);

// True when some coordinate escaped or went non-finite.
bool state_escaped(const StateVector& x) noexcept;

}  // namespace chaoscope
