#ifndef ELASTICA_CORE_PATH_GRADIENT_HPP
#define ELASTICA_CORE_PATH_GRADIENT_HPP

#include <span>
#include <vector>

#include "elastic_metric.hpp"
#include "geometry.hpp"
#include "types.hpp"

namespace elastica {

// Finite differences in t on the lifted angle field: second-order central at
// interior slices, second-order one-sided at t = 0 and t = 1 for the first
// derivative, three-point second difference for the second. Exact on paths
// that are polynomials of degree <= 2 in t.
struct PathDerivatives {
  std::vector<double> theta_dot, theta_ddot, delta_dot;  // (nt+1) x n
  size_t n = 0, nt = 0;

  const double* dot_slice(size_t j) const { return theta_dot.data() + j * n; }
  const double* ddot_slice(size_t j) const { return theta_ddot.data() + j * n; }
  const double* ddelta_slice(size_t j) const { return delta_dot.data() + j * n; }
};
PathDerivatives time_derivatives(const AnglePath& angles);

// Gauge for the near-singular dualization system: MeanZero removes the mean
// of h (reproducible fields free of the large base-point-rotation component);
// Exact keeps the solver output so the duality identity holds to roundoff.
enum class DualGauge { MeanZero, Exact };

struct SliceGradient {
  std::vector<double> m, mdot, xi, h, beta;
  std::vector<Vec2> z;
  double quotient_norm2 = 0.0;
};

struct GradientField {
  std::vector<SliceGradient> slices;  // nt+1 entries; endpoints all zero
  size_t n = 0, nt = 0;

  // sqrt of the trapezoidal time integral of the per-slice quotient norms
  double path_norm() const;
  double max_displacement() const;
};

// Per-slice energy integrand (n/2) sum_k [ a (m_k - m_{k+1} cos d_{k+1})^2
//   + b (td_k / n - m_{k+1} sin d_{k+1})^2 ] with m from horizontal_m(td).
double energy_integrand(const SliceTrig& trig, std::span<const double> theta_dot,
                        std::span<const double> m, ElasticParams params);

// Path energy: trapezoidal rule over the nt+1 slices.
double path_energy(const AnglePath& angles, ElasticParams params,
                   std::vector<double>* per_slice = nullptr);
double path_energy(const PathOfChains& path, ElasticParams params,
                   std::vector<double>* per_slice = nullptr);

// L2-representative of the energy derivative at one interior slice.
std::vector<double> compute_xi(const SliceTrig& trig, std::span<const double> theta_dot,
                               std::span<const double> theta_ddot,
                               std::span<const double> delta_dot, ElasticParams params,
                               std::vector<double>* m_out = nullptr,
                               std::vector<double>* mdot_out = nullptr);

// Dualization: beta_k = xi_k / b + n h_{k+1} sin d_{k+1}, with h solving the
// cyclic system (a + a cos^2 d_k) h_k - a cos d_k h_{k-1} - a cos d_{k+1} h_{k+1}
// = (1/n) xi_{k-1} sin d_k.
struct BetaField {
  std::vector<double> beta, h;
};
BetaField xi_to_beta(const SliceTrig& trig, std::span<const double> xi, ElasticParams params,
                     DualGauge gauge = DualGauge::MeanZero);

// Displacement field from beta: z_0 = 0 and
//   n (z_{k+1} - z_k) = beta_k n_k - (1/n) sum_j beta_j n_j,
// which telescopes to exact cyclic closure. Without the closure correction
// (closedness = false) the increments are beta_k n_k exactly.
std::vector<Vec2> assemble_z(const SliceTrig& trig, std::span<const double> beta,
                             bool closedness_projection = true);

// Full pipeline over a path; endpoint slices carry zero gradient.
GradientField path_gradient(const PathOfChains& path, ElasticParams params,
                            DualGauge gauge = DualGauge::MeanZero);
GradientField path_gradient(const AnglePath& angles, ElasticParams params,
                            DualGauge gauge = DualGauge::MeanZero);

}  // namespace elastica

#endif
