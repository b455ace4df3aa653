#ifndef ELASTICA_CORE_STRAIGHTEN_HPP
#define ELASTICA_CORE_STRAIGHTEN_HPP

#include <vector>

#include "path_gradient.hpp"

namespace elastica {

struct StraightenConfig {
  ElasticParams params;
  double step = 0.0;            // <= 0: scale automatically from the first gradient
  double step_fraction = 0.05;  // auto step: first move = fraction of a rod length
  long max_iters = 1000;
  double grad_tol = 1e-3;
  long reproject_every = 50;    // re-resample slices to equal rods; 0 = never
  bool line_search = true;
  long trace_every = 1;

  void validate() const;
};

enum class StraightenStatus { Converged, MaxIters, Diverged };

struct TraceEntry {
  long iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double rod_deviation = 0.0;
};

struct StraightenReport {
  std::vector<TraceEntry> trace;
  PathOfChains final_path;
  StraightenStatus status = StraightenStatus::MaxIters;
  long iterations = 0;
  double final_energy = 0.0;
  double final_grad_norm = 0.0;
};

// Gradient descent on the path energy with fixed endpoint slices: each
// iteration updates the interior slices by -delta * grad, renormalizes every
// interior slice to perimeter 1, and optionally re-resamples to equal rods.
StraightenReport straighten(const PathOfChains& initial, const StraightenConfig& config);

// Step size such that the first update moves the largest vertex displacement
// by target_rel_change of one rod length. Throws when the gradient vanishes.
double auto_step(const PathOfChains& path, ElasticParams params, double target_rel_change);

}  // namespace elastica

#endif
