#include "elastic_metric.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>

namespace elastica {

SliceTrig slice_trig(std::span<const double> theta, int rotation_number) {
  SliceTrig t;
  t.n = theta.size();
  t.theta.assign(theta.begin(), theta.end());
  t.cosd.resize(t.n);
  t.sind.resize(t.n);
  for (size_t k = 0; k < t.n; ++k) {
    const double prev = (k == 0) ? theta[t.n - 1] - kTwoPi * rotation_number : theta[k - 1];
    const double d = theta[k] - prev;
    t.cosd[k] = std::cos(d);
    t.sind[k] = std::sin(d);
  }
  return t;
}

SliceTrig slice_trig(const Chain& chain) {
  const AngleSlice s = angles_from_chain(chain);
  return slice_trig(s.theta, s.rotation_number);
}

double elastic_inner(std::span<const Vec2> w, std::span<const Vec2> z, const Chain& chain,
                     ElasticParams params) {
  const size_t n = chain.size();
  if (w.size() != n || z.size() != n)
    throw InvalidArgument("elastic_inner: field size mismatch (n=" + std::to_string(n) +
                          ", |w|=" + std::to_string(w.size()) +
                          ", |z|=" + std::to_string(z.size()) + ")");
  double acc = 0.0;
  for (size_t k = 0; k < n; ++k) {
    Vec2 v = chain.rod(k);
    const double len = v.norm();
    v = v / len;
    const Vec2 nk = v.perp();
    const Vec2 dw = w[(k + 1) % n] - w[k];
    const Vec2 dz = z[(k + 1) % n] - z[k];
    acc += params.a * dot(dw, v) * dot(dz, v) + params.b * dot(dw, nk) * dot(dz, nk);
  }
  return acc * static_cast<double>(n);
}

CyclicTridiagonal projection_system(const SliceTrig& trig, ElasticParams params) {
  CyclicTridiagonal sys;
  sys.diag.resize(trig.n);
  sys.off.resize(trig.n);
  for (size_t k = 0; k < trig.n; ++k) {
    const double c = trig.cosd[k], s = trig.sind[k];
    sys.diag[k] = params.a + params.a * c * c + params.b * s * s;
    sys.off[k] = -params.a * c;
  }
  return sys;
}

namespace {
std::atomic<long> g_fallbacks{0};

std::vector<double> solve_with_fallback(const CyclicTridiagonal& sys,
                                        std::span<const double> rhs) {
  try {
    return solve_cyclic(sys, rhs);
  } catch (const SolverError& e) {
    const long count = g_fallbacks.fetch_add(1) + 1;
    if (count == 1)
      std::fprintf(stderr, "elastica: cyclic solve fell back to dense (%s)\n", e.what());
    return solve_dense(sys, rhs);
  }
}
}  // namespace

long horizontal_m_fallback_count() { return g_fallbacks.load(); }

std::vector<double> horizontal_m(const SliceTrig& trig, std::span<const double> phi,
                                 ElasticParams params) {
  const size_t n = trig.n;
  if (phi.size() != n) throw InvalidArgument("horizontal_m: phi size mismatch");
  std::vector<double> rhs(n);
  const double bn = params.b / static_cast<double>(n);
  for (size_t k = 0; k < n; ++k) rhs[k] = bn * trig.sind[k] * phi[(k + n - 1) % n];
  return solve_with_fallback(projection_system(trig, params), rhs);
}

std::vector<double> horizontal_m(const Chain& chain, std::span<const double> phi,
                                 ElasticParams params) {
  return horizontal_m(slice_trig(chain), phi, params);
}

std::vector<double> vertical_component_raw(std::span<const Vec2> w, const Chain& chain,
                                           ElasticParams params) {
  const size_t n = chain.size();
  if (w.size() != n) throw InvalidArgument("vertical_component_raw: size mismatch");
  const SliceTrig trig = slice_trig(chain);
  // rhs_k = a cos(d_k) <Dw_{k-1}, v_{k-1}> - a <Dw_k, v_k> + b sin(d_k) <Dw_{k-1}, n_{k-1}>
  std::vector<double> tang(n), norm(n);
  for (size_t k = 0; k < n; ++k) {
    Vec2 v = chain.rod(k);
    v = v / v.norm();
    const Vec2 dw = w[(k + 1) % n] - w[k];
    tang[k] = dot(dw, v);
    norm[k] = dot(dw, v.perp());
  }
  std::vector<double> rhs(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t p = (k + n - 1) % n;
    rhs[k] = params.a * trig.cosd[k] * tang[p] - params.a * tang[k] +
             params.b * trig.sind[k] * norm[p];
  }
  return solve_with_fallback(projection_system(trig, params), rhs);
}

std::vector<Vec2> field_from_phi(const SliceTrig& trig, std::span<const double> phi) {
  const size_t n = trig.n;
  if (phi.size() != n) throw InvalidArgument("field_from_phi: size mismatch");
  std::vector<Vec2> w(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k + 1 < n; ++k) {
    const Vec2 nk = Vec2(std::cos(trig.theta[k]), std::sin(trig.theta[k])).perp();
    w[k + 1] = w[k] + nk * (phi[k] * inv_n);
  }
  return w;
}

std::vector<Vec2> project_horizontal(const Chain& chain, std::span<const double> phi,
                                     ElasticParams params) {
  const SliceTrig trig = slice_trig(chain);
  const std::vector<double> m = horizontal_m(trig, phi, params);
  std::vector<Vec2> w = field_from_phi(trig, phi);
  for (size_t k = 0; k < chain.size(); ++k) {
    const Vec2 v(std::cos(trig.theta[k]), std::sin(trig.theta[k]));
    w[k] -= v * m[k];
  }
  return w;
}

double quotient_inner(const SliceTrig& trig, std::span<const double> phi,
                      std::span<const double> psi, ElasticParams params) {
  const size_t n = trig.n;
  if (phi.size() != n || psi.size() != n)
    throw InvalidArgument("quotient_inner: field size mismatch");
  const std::vector<double> h = horizontal_m(trig, psi, params);
  double acc = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t next = (k + 1) % n;
    acc += phi[k] * inv_n * (psi[k] * inv_n - h[next] * trig.sind[next]);
  }
  return params.b * acc * static_cast<double>(n);
}

double quotient_inner(const Chain& chain, std::span<const double> phi,
                      std::span<const double> psi, ElasticParams params) {
  return quotient_inner(slice_trig(chain), phi, psi, params);
}

std::vector<double> project_closed_phi(const SliceTrig& trig, std::span<const double> phi) {
  const size_t n = trig.n;
  if (phi.size() != n) throw InvalidArgument("project_closed_phi: size mismatch");
  // solve the 2x2 system (sum n_k n_k^T) c = sum phi_k n_k, subtract <c, n_k>
  double j00 = 0.0, j01 = 0.0, j11 = 0.0, r0 = 0.0, r1 = 0.0;
  std::vector<Vec2> nk(n);
  for (size_t k = 0; k < n; ++k) {
    nk[k] = Vec2(std::cos(trig.theta[k]), std::sin(trig.theta[k])).perp();
    j00 += nk[k].x * nk[k].x;
    j01 += nk[k].x * nk[k].y;
    j11 += nk[k].y * nk[k].y;
    r0 += phi[k] * nk[k].x;
    r1 += phi[k] * nk[k].y;
  }
  const double det = j00 * j11 - j01 * j01;
  if (std::abs(det) < 1e-14) throw SolverError("project_closed_phi: singular normal frame");
  const double c0 = (r0 * j11 - r1 * j01) / det;
  const double c1 = (j00 * r1 - j01 * r0) / det;
  std::vector<double> out(phi.begin(), phi.end());
  for (size_t k = 0; k < n; ++k) out[k] -= c0 * nk[k].x + c1 * nk[k].y;
  return out;
}

}  // namespace elastica
