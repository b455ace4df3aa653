#ifndef ELASTICA_CORE_CYCLIC_TRIDIAG_HPP
#define ELASTICA_CORE_CYCLIC_TRIDIAG_HPP

#include <span>
#include <vector>

#include "types.hpp"

namespace elastica {

// Symmetric cyclic tridiagonal system. off[k] couples unknowns k-1 and k
// (cyclically: off[0] is the corner coupling n-1 and 0), so row k reads
//   off[k] * x[k-1] + diag[k] * x[k] + off[k+1] * x[k+1] = rhs[k].
struct CyclicTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  size_t size() const { return diag.size(); }
  void validate() const;

  // dense row-major matrix, for the oracle solver and tests
  std::vector<double> to_dense() const;
};

// O(n) solve: Thomas elimination on a modified tridiagonal core plus a
// rank-one Sherman-Morrison correction for the two corner entries.
// Throws SolverError on pivot or correction breakdown (near-singular system).
std::vector<double> solve_cyclic(const CyclicTridiagonal& sys, std::span<const double> rhs);

// O(n^3) Gaussian elimination with partial pivoting on the assembled dense
// matrix; oracle for tests and fallback for systems solve_cyclic rejects.
std::vector<double> solve_dense(const CyclicTridiagonal& sys, std::span<const double> rhs);
std::vector<double> solve_dense(std::vector<double> matrix, std::vector<double> rhs, size_t n);

// residual-based check helper: max |A x - rhs|
double residual_inf(const CyclicTridiagonal& sys, std::span<const double> x,
                    std::span<const double> rhs);

}  // namespace elastica

#endif
