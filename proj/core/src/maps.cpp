#include "chaoscope/maps.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace chaoscope {

std::string_view to_string(JacobianMode mode) {
  return mode == JacobianMode::corrected ? "corrected" : "paper_compat";
}

MapDefinition::MapDefinition(std::string name, int dimension,
                             std::vector<ParameterSlot> schema,
                             UpdateRule update, JacobianRule jacobian)
    : name_(std::move(name)),
      dimension_(dimension),
      schema_(std::move(schema)),
      update_(std::move(update)),
      jacobian_(std::move(jacobian)) {
  if (dimension_ < 1 || dimension_ > kMaxDimension)
    throw DimensionError("map dimension must be in [1, " +
                         std::to_string(kMaxDimension) + "]");
}

double logistic_apply(double x, double r) { return r * x * (1.0 - x); }

double logistic_derivative(double x, double r) { return r * (1.0 - 2.0 * x); }

std::pair<double, double> henon_apply(double x, double y, double a, double b) {
  return {1.0 + y - a * x * x, b * x};
}

SquareMatrix henon_jacobian(double x, double a, double b, JacobianMode mode) {
  const double dfx_dx =
      mode == JacobianMode::paper_compat ? -2.0 * x : -2.0 * a * x;
  return SquareMatrix(2, {dfx_dx, 1.0, b, 0.0});
}

const MapDefinition& logistic_map() {
  static const MapDefinition map(
      "logistic", 1, {{"r", 4.0, 0.0, 4.0}},
      [](const StateVector& x, std::span<const double> p) {
        return StateVector{logistic_apply(x[0], p[0])};
      },
      [](const StateVector& x, std::span<const double> p, JacobianMode) {
        return SquareMatrix(1, {logistic_derivative(x[0], p[0])});
      });
  return map;
}

const MapDefinition& henon_map() {
  static const MapDefinition map(
      "henon", 2,
      {{"a", 1.4, std::nullopt, std::nullopt},
       {"b", 0.3, std::nullopt, std::nullopt}},
      [](const StateVector& x, std::span<const double> p) {
        auto [xn, yn] = henon_apply(x[0], x[1], p[0], p[1]);
        return StateVector{xn, yn};
      },
      [](const StateVector& x, std::span<const double> p, JacobianMode mode) {
        return henon_jacobian(x[0], p[0], p[1], mode);
      });
  return map;
}

const MapDefinition* find_map(std::string_view name) {
  if (name == "logistic") return &logistic_map();
  if (name == "henon") return &henon_map();
  return nullptr;
}

std::vector<std::string> builtin_map_names() { return {"logistic", "henon"}; }

BoundParameters bind_parameters(const MapDefinition& map,
                                const ParameterMap& params) {
  BoundParameters bound;
  const auto& schema = map.parameter_schema();
  bound.values.reserve(schema.size());
  for (const auto& slot : schema) {
    auto it = params.find(slot.name);
    const double value = it == params.end() ? slot.default_value : it->second;
    if (!std::isfinite(value))
      throw std::invalid_argument(map.name() + ": parameter " + slot.name +
                                  " must be finite");
    if ((slot.soft_min && value < *slot.soft_min) ||
        (slot.soft_max && value > *slot.soft_max)) {
      std::ostringstream msg;
      msg << map.name() << ": parameter " << slot.name << "=" << value
          << " outside the usual range [" << slot.soft_min.value_or(-HUGE_VAL)
          << ", " << slot.soft_max.value_or(HUGE_VAL)
          << "]; standard invariants may not hold";
      bound.warnings.push_back(msg.str());
    }
    bound.values.push_back(value);
  }
  for (const auto& [name, value] : params) {
    bool known = false;
    for (const auto& slot : schema) known = known || slot.name == name;
    if (!known)
      throw std::invalid_argument(map.name() + ": unknown parameter \"" +
                                  name + "\"");
  }
  return bound;
}

bool state_escaped(const StateVector& x) noexcept {
  for (int i = 0; i < x.size(); ++i)
    if (!(std::fabs(x[i]) <= kDivergenceThreshold)) return true;
  return false;
}

Trajectory iterate_map(const MapDefinition& map, std::span<const double> params,
                       const StateVector& x0, std::size_t steps, bool record) {
  if (x0.size() != map.dimension())
    throw DimensionError("initial state dimension does not match map \"" +
                         map.name() + "\"");
  Trajectory traj;
  traj.map_name = map.name();
  traj.parameters.assign(params.begin(), params.end());
  traj.initial_state = x0;
  if (record) traj.states.reserve(steps);

  StateVector x = x0;
  for (std::size_t k = 1; k <= steps; ++k) {
    x = map.apply(x, params);
    if (record) traj.states.push_back(x);
    if (state_escaped(x)) {
      traj.diverged_at = k;
      if (!record) traj.states.assign(1, x);
      return traj;
    }
  }
  if (!record && steps > 0) traj.states.assign(1, x);
  return traj;
}

}  // namespace chaoscope
