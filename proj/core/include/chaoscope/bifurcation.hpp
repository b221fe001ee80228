#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoscope/maps.hpp"

namespace chaoscope {

// Post-transient state samples at one parameter value. A divergent orbit
// yields an empty, flagged record.
struct BifurcationRecord {
  double parameter_value = 0.0;
  std::vector<double> samples;
  bool diverged = false;
};

// For each r: iterate num_transient steps from x0 discarding output, then
// record the next num_iterations states. Grid points may run concurrently;
// assembly order is always ascending input order.
std::vector<BifurcationRecord> bifurcation_diagram(
    const MapDefinition& map, std::span<const double> r_values, double x0,
    std::size_t num_transient, std::size_t num_iterations,
    int thread_count = 1);

// Number of clusters after sorting the samples and splitting where the gap
// between neighbors exceeds tolerance. Empty input counts zero.
int count_attractor_points(std::span<const double> samples, double tolerance);

}  // namespace chaoscope
