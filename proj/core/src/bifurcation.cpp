#include "chaoscope/bifurcation.hpp"

#include <algorithm>
#include <stdexcept>

#include "chaoscope/parallel.hpp"

namespace chaoscope {

std::vector<BifurcationRecord> bifurcation_diagram(
    const MapDefinition& map, std::span<const double> r_values, double x0,
    std::size_t num_transient, std::size_t num_iterations, int thread_count) {
  if (map.dimension() != 1)
    throw DimensionError("bifurcation diagram requires a one-dimensional map");
  if (map.parameter_schema().size() != 1)
    throw std::invalid_argument(
        "bifurcation diagram requires a map with exactly one parameter");
  if (num_iterations < 1)
    throw std::invalid_argument("num_iterations must be >= 1");

  std::vector<BifurcationRecord> records(r_values.size());
  parallel_for_indexed(r_values.size(), thread_count, [&](std::size_t k) {
    const double r[1] = {r_values[k]};
    BifurcationRecord& rec = records[k];
    rec.parameter_value = r_values[k];
    StateVector x{x0};
    try {
      for (std::size_t j = 1; j <= num_transient; ++j) {
        x = map.apply(x, r);
        if (state_escaped(x)) throw DivergenceError("transient diverged", j);
      }
      rec.samples.reserve(num_iterations);
      for (std::size_t j = 1; j <= num_iterations; ++j) {
        x = map.apply(x, r);
        if (state_escaped(x))
          throw DivergenceError("orbit diverged", num_transient + j);
        rec.samples.push_back(x[0]);
      }
    } catch (const DivergenceError&) {
      rec.samples.clear();
      rec.diverged = true;
    }
  });
  return records;
}

int count_attractor_points(std::span<const double> samples, double tolerance) {
  if (!(tolerance > 0.0))
    throw std::invalid_argument("cluster tolerance must be positive");
  if (samples.empty()) return 0;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  int clusters = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] > tolerance) ++clusters;
  return clusters;
}

}  // namespace chaoscope
