#ifndef ELASTICA_CORE_GRADCHECK_HPP
#define ELASTICA_CORE_GRADCHECK_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "path_gradient.hpp"

namespace elastica {

struct GradCheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  bool all_passed = true;
};

// Finite-difference validation of the gradient pipeline on seeded random
// paths: the directional derivative against the L2 representative, the
// solved-m time derivative against its closed form, the duality identity,
// and the fully assembled field against a vertex-space central difference.
// corrupt_xi injects an error into xi to prove the checks can fail.
GradCheckReport run_gradient_checks(uint64_t seed, size_t n, size_t nt, ElasticParams params,
                                    bool corrupt_xi = false);

// test-path helpers, shared with the test suites ---------------------------

// Relative error of the trapezoidal pairing of xi against a central finite
// difference of the energy, along the time-windowed representative direction.
// corrupt perturbs one xi entry per slice block (negative control).
double xi_fd_relative_error(const AnglePath& path, ElasticParams params, double h = 1e-5,
                            bool corrupt = false);

// Relative error of the quotient-metric pairing of the assembled gradient
// (via its beta profile) against a vertex-space central difference of the
// energy, along a closed arc-length-preserving variation field.
double assembled_fd_relative_error(const AnglePath& path, ElasticParams params,
                                   double h = 1e-6, bool corrupt = false);

// smooth random closed chain: circle perturbed by a few Fourier modes in the
// turning angles, re-closed; min |delta| kept away from zero
std::vector<double> random_convex_theta(size_t n, std::mt19937_64& rng, double amplitude);

// Random gentle path: static random shape plus a t*(1-t)-profiled second
// shape, every slice closed; rows are lifted angle slices. The time amplitude
// stays small so that the O(dt^2) truncation of the time stencils does not
// drown the finite-difference identities these paths validate.
AnglePath random_gentle_path(size_t n, size_t nt, std::mt19937_64& rng,
                             double shape_amplitude = 0.15, double time_amplitude = 0.008);

PathOfChains chains_from_angle_path(const AnglePath& angles);

}  // namespace elastica

#endif
