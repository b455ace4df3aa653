#include "path_gradient.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

PathDerivatives time_derivatives(const AnglePath& angles) {
  if (angles.nt < 4)
    throw InvalidArgument("time_derivatives: N_t must be at least 4, got " +
                          std::to_string(angles.nt));
  const size_t n = angles.n, nt = angles.nt;
  const double dt = angles.dt();
  PathDerivatives out;
  out.n = n;
  out.nt = nt;
  out.theta_dot.resize((nt + 1) * n);
  out.theta_ddot.resize((nt + 1) * n);
  out.delta_dot.resize((nt + 1) * n);
  const double* th = angles.theta.data();
  auto at = [&](size_t j, size_t k) { return th[j * n + k]; };
  for (size_t j = 0; j <= nt; ++j) {
    for (size_t k = 0; k < n; ++k) {
      // difference-form stencils: exactly zero on paths constant in t
      double d1, d2;
      if (j == 0) {
        d1 = (3.0 * (at(1, k) - at(0, k)) + (at(1, k) - at(2, k))) / (2.0 * dt);
        d2 = ((at(0, k) - at(1, k)) + (at(2, k) - at(1, k))) / (dt * dt);
      } else if (j == nt) {
        d1 = (3.0 * (at(nt, k) - at(nt - 1, k)) + (at(nt - 2, k) - at(nt - 1, k))) /
             (2.0 * dt);
        d2 = ((at(nt, k) - at(nt - 1, k)) + (at(nt - 2, k) - at(nt - 1, k))) / (dt * dt);
      } else {
        d1 = (at(j + 1, k) - at(j - 1, k)) / (2.0 * dt);
        d2 = ((at(j + 1, k) - at(j, k)) + (at(j - 1, k) - at(j, k))) / (dt * dt);
      }
      out.theta_dot[j * n + k] = d1;
      out.theta_ddot[j * n + k] = d2;
    }
    for (size_t k = 0; k < n; ++k) {
      const size_t prev = (k + n - 1) % n;
      out.delta_dot[j * n + k] = out.theta_dot[j * n + k] - out.theta_dot[j * n + prev];
    }
  }
  return out;
}

double energy_integrand(const SliceTrig& trig, std::span<const double> theta_dot,
                        std::span<const double> m, ElasticParams params) {
  const size_t n = trig.n;
  double acc = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t next = (k + 1) % n;
    const double ta = m[k] - m[next] * trig.cosd[next];
    const double tb = theta_dot[k] * inv_n - m[next] * trig.sind[next];
    acc += params.a * ta * ta + params.b * tb * tb;
  }
  return 0.5 * static_cast<double>(n) * acc;
}

double path_energy(const AnglePath& angles, ElasticParams params,
                   std::vector<double>* per_slice) {
  const PathDerivatives deriv = time_derivatives(angles);
  const size_t n = angles.n, nt = angles.nt;
  if (per_slice) per_slice->assign(nt + 1, 0.0);
  double acc = 0.0;
  for (size_t j = 0; j <= nt; ++j) {
    const SliceTrig trig =
        slice_trig(std::span<const double>(angles.slice(j), n), angles.rotation_number);
    std::span<const double> td(deriv.dot_slice(j), n);
    const std::vector<double> m = horizontal_m(trig, td, params);
    const double s = energy_integrand(trig, td, m, params);
    if (per_slice) (*per_slice)[j] = s;
    acc += (j == 0 || j == nt) ? 0.5 * s : s;
  }
  return acc * angles.dt();
}

double path_energy(const PathOfChains& path, ElasticParams params,
                   std::vector<double>* per_slice) {
  return path_energy(lift_path_angles(path), params, per_slice);
}

std::vector<double> compute_xi(const SliceTrig& trig, std::span<const double> theta_dot,
                               std::span<const double> theta_ddot,
                               std::span<const double> delta_dot, ElasticParams params,
                               std::vector<double>* m_out, std::vector<double>* mdot_out) {
  const size_t n = trig.n;
  const double nn = static_cast<double>(n);
  const double a = params.a, b = params.b;
  const std::vector<double> m = horizontal_m(trig, theta_dot, params);

  // d/dt of the projection system applied to m, solved against the same matrix
  std::vector<double> rvec(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t p = (k + n - 1) % n;
    const size_t q = (k + 1) % n;
    rvec[k] = (b / nn) * trig.sind[k] * theta_ddot[p] +
              (b / nn) * trig.cosd[k] * theta_dot[p] * delta_dot[k] +
              2.0 * (a - b) * trig.sind[k] * trig.cosd[k] * m[k] * delta_dot[k] -
              a * trig.sind[k] * m[p] * delta_dot[k] -
              a * trig.sind[q] * m[q] * delta_dot[q];
  }
  const CyclicTridiagonal sys = projection_system(trig, params);
  std::vector<double> mdot;
  try {
    mdot = solve_cyclic(sys, rvec);
  } catch (const SolverError&) {
    mdot = solve_dense(sys, rvec);
  }

  std::vector<double> xi(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t p = (k + n - 1) % n;
    const size_t q = (k + 1) % n;
    xi[k] = -b * theta_ddot[k] +
            b * nn * (mdot[q] * trig.sind[q] + m[q] * trig.cosd[q] * theta_dot[q] -
                      m[k] * trig.cosd[k] * theta_dot[p]) +
            nn * nn * (b - a) *
                (m[k] * m[k] * trig.sind[k] * trig.cosd[k] -
                 m[q] * m[q] * trig.sind[q] * trig.cosd[q]) +
            a * nn * nn * m[k] * (m[p] * trig.sind[k] - m[q] * trig.sind[q]);
  }
  if (m_out) *m_out = m;
  if (mdot_out) *mdot_out = std::move(mdot);
  return xi;
}

BetaField xi_to_beta(const SliceTrig& trig, std::span<const double> xi, ElasticParams params,
                     DualGauge gauge) {
  const size_t n = trig.n;
  if (xi.size() != n) throw InvalidArgument("xi_to_beta: size mismatch");
  const double nn = static_cast<double>(n);
  CyclicTridiagonal sys;
  sys.diag.resize(n);
  sys.off.resize(n);
  for (size_t k = 0; k < n; ++k) {
    sys.diag[k] = params.a * (1.0 + trig.cosd[k] * trig.cosd[k]);
    sys.off[k] = -params.a * trig.cosd[k];
  }
  std::vector<double> rhs(n);
  for (size_t k = 0; k < n; ++k) rhs[k] = trig.sind[k] * xi[(k + n - 1) % n] / nn;
  BetaField out;
  try {
    out.h = solve_cyclic(sys, rhs);
  } catch (const SolverError&) {
    out.h = solve_dense(sys, rhs);
  }
  if (gauge == DualGauge::MeanZero) {
    double mean = 0.0;
    for (double v : out.h) mean += v;
    mean /= nn;
    for (double& v : out.h) v -= mean;
  }
  out.beta.resize(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t q = (k + 1) % n;
    out.beta[k] = xi[k] / params.b + nn * out.h[q] * trig.sind[q];
  }
  return out;
}

std::vector<Vec2> assemble_z(const SliceTrig& trig, std::span<const double> beta,
                             bool closedness_projection) {
  const size_t n = trig.n;
  if (beta.size() != n) throw InvalidArgument("assemble_z: size mismatch");
  std::vector<Vec2> inc(n);
  Vec2 mean;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k < n; ++k) {
    const Vec2 nk = Vec2(std::cos(trig.theta[k]), std::sin(trig.theta[k])).perp();
    inc[k] = nk * (beta[k] * inv_n);
    mean += inc[k];
  }
  mean = mean * inv_n;
  if (!closedness_projection) mean = Vec2(0, 0);
  std::vector<Vec2> z(n);
  for (size_t k = 0; k + 1 < n; ++k) z[k + 1] = z[k] + inc[k] - mean;
  return z;
}

double GradientField::path_norm() const {
  double acc = 0.0;
  for (size_t j = 0; j < slices.size(); ++j) {
    const double w = (j == 0 || j + 1 == slices.size()) ? 0.5 : 1.0;
    acc += w * slices[j].quotient_norm2;
  }
  return std::sqrt(std::max(0.0, acc / static_cast<double>(nt)));
}

double GradientField::max_displacement() const {
  double worst = 0.0;
  for (const SliceGradient& s : slices)
    for (const Vec2& v : s.z) worst = std::max(worst, v.norm());
  return worst;
}

GradientField path_gradient(const AnglePath& angles, ElasticParams params, DualGauge gauge) {
  const PathDerivatives deriv = time_derivatives(angles);
  const size_t n = angles.n, nt = angles.nt;
  GradientField out;
  out.n = n;
  out.nt = nt;
  out.slices.resize(nt + 1);
  for (size_t j = 0; j <= nt; ++j) {
    SliceGradient& g = out.slices[j];
    if (j == 0 || j == nt) {
      g.m.assign(n, 0.0);
      g.mdot.assign(n, 0.0);
      g.xi.assign(n, 0.0);
      g.h.assign(n, 0.0);
      g.beta.assign(n, 0.0);
      g.z.assign(n, Vec2());
      continue;
    }
    const SliceTrig trig =
        slice_trig(std::span<const double>(angles.slice(j), n), angles.rotation_number);
    g.xi = compute_xi(trig, std::span<const double>(deriv.dot_slice(j), n),
                      std::span<const double>(deriv.ddot_slice(j), n),
                      std::span<const double>(deriv.ddelta_slice(j), n), params, &g.m,
                      &g.mdot);
    BetaField bf = xi_to_beta(trig, g.xi, params, gauge);
    g.beta = std::move(bf.beta);
    g.h = std::move(bf.h);
    g.z = assemble_z(trig, g.beta);
    g.quotient_norm2 = std::max(0.0, quotient_inner(trig, g.beta, g.beta, params));
  }
  return out;
}

GradientField path_gradient(const PathOfChains& path, ElasticParams params, DualGauge gauge) {
  return path_gradient(lift_path_angles(path), params, gauge);
}

}  // namespace elastica
