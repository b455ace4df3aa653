#ifndef ELASTICA_CORE_EXPERIMENTS_HPP
#define ELASTICA_CORE_EXPERIMENTS_HPP

#include <vector>

#include "path_gradient.hpp"

namespace elastica {

// Energies of bump paths circle -> family(u,v) -> circle on a grid_u x grid_v
// grid of (u,v) in [0,1]^2. Row-major with v as the row index; cells evaluate
// in parallel.
std::vector<double> landscape_energies(size_t n, size_t nt, size_t grid_u, size_t grid_v,
                                       ElasticParams params);

std::vector<double> grid_coords(size_t count);

}  // namespace elastica

#endif
