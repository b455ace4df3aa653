#ifndef ELASTICA_CORE_ELASTIC_METRIC_HPP
#define ELASTICA_CORE_ELASTIC_METRIC_HPP

#include <span>
#include <vector>

#include "cyclic_tridiag.hpp"
#include "geometry.hpp"
#include "types.hpp"

namespace elastica {

// Per-slice trigonometry of the turning angles: delta[k] = theta[k]-theta[k-1]
// (the k=0 difference taken through the rotation number).
struct SliceTrig {
  std::vector<double> theta, cosd, sind;
  size_t n = 0;
};
SliceTrig slice_trig(std::span<const double> theta, int rotation_number);
SliceTrig slice_trig(const Chain& chain);

// Discrete elastic inner product of two raw vector fields along a chain:
//   n * sum_k [ a <Dw_k, v_k><Dz_k, v_k> + b <Dw_k, n_k><Dz_k, n_k> ],
// Dw_k = w_{k+1} - w_k (cyclic).
double elastic_inner(std::span<const Vec2> w, std::span<const Vec2> z, const Chain& chain,
                     ElasticParams params);

// System matrix of the vertical projection:
//   d_k = a + a cos^2 d_k + b sin^2 d_k,  off_k = -a cos d_k.
CyclicTridiagonal projection_system(const SliceTrig& trig, ElasticParams params);

// Vertical component m of an arc-length-preserving field with normal
// increment profile phi: solves the cyclic system with rhs
// (b/n) sin(d_k) phi_{k-1}. Falls back to the dense solver (with a one-time
// warning) when the fast path reports a near-singular system.
std::vector<double> horizontal_m(const SliceTrig& trig, std::span<const double> phi,
                                 ElasticParams params);
std::vector<double> horizontal_m(const Chain& chain, std::span<const double> phi,
                                 ElasticParams params);
long horizontal_m_fallback_count();

// Vertical component of a general raw field (used to project fields whose
// increments are not purely normal, e.g. assembled gradients).
std::vector<double> vertical_component_raw(std::span<const Vec2> w, const Chain& chain,
                                           ElasticParams params);

// Realize the arc-length-preserving field with profile phi as raw vectors
// anchored at w_0 = 0: n (w_{k+1} - w_k) = phi_k n_k.
std::vector<Vec2> field_from_phi(const SliceTrig& trig, std::span<const double> phi);

// P_h(w) = w - m v for an arc-length-preserving field given by phi.
std::vector<Vec2> project_horizontal(const Chain& chain, std::span<const double> phi,
                                     ElasticParams params);

// Quotient inner product of two arc-length-preserving fields:
//   n sum_k b (phi_k/n) (psi_k/n - h_{k+1} sin d_{k+1}),  h = horizontal_m(psi).
double quotient_inner(const SliceTrig& trig, std::span<const double> phi,
                      std::span<const double> psi, ElasticParams params);
double quotient_inner(const Chain& chain, std::span<const double> phi,
                      std::span<const double> psi, ElasticParams params);

// Remove the closure-violating component of a normal-increment profile:
// afterwards sum_k phi_k n_k = 0, so the field closes up around the chain.
std::vector<double> project_closed_phi(const SliceTrig& trig, std::span<const double> phi);

}  // namespace elastica

#endif
