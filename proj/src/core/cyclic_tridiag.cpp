#include "cyclic_tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

void CyclicTridiagonal::validate() const {
  if (diag.size() < 3)
    throw InvalidArgument("cyclic tridiagonal system needs n >= 3, got n=" +
                          std::to_string(diag.size()));
  if (off.size() != diag.size())
    throw InvalidArgument("cyclic tridiagonal size mismatch: |diag|=" +
                          std::to_string(diag.size()) + " |off|=" + std::to_string(off.size()));
}

std::vector<double> CyclicTridiagonal::to_dense() const {
  validate();
  const size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (size_t k = 0; k < n; ++k) {
    m[k * n + k] = diag[k];
    const size_t prev = (k + n - 1) % n;
    m[k * n + prev] += off[k];
    m[prev * n + k] += off[k];
  }
  return m;
}

namespace {

// plain Thomas elimination; writes the solution into x
void thomas(std::span<const double> dg, std::span<const double> lower,
            std::span<const double> rhs, std::vector<double>& x, double pivot_floor) {
  const size_t n = dg.size();
  std::vector<double> c(n, 0.0);
  x.assign(rhs.begin(), rhs.end());
  double piv = dg[0];
  double scale = std::abs(dg[0]) + std::abs(lower[0]);
  if (std::abs(piv) <= pivot_floor * std::max(scale, 1e-300))
    throw SolverError("near-singular system: leading pivot " + std::to_string(piv));
  c[0] = lower[0] / piv;
  x[0] = x[0] / piv;
  for (size_t k = 1; k < n; ++k) {
    piv = dg[k] - lower[k - 1] * c[k - 1];
    scale = std::abs(dg[k]) + std::abs(lower[k - 1]) + (k + 1 < n ? std::abs(lower[k]) : 0.0);
    if (std::abs(piv) <= pivot_floor * std::max(scale, 1e-300))
      throw SolverError("near-singular system: pivot " + std::to_string(piv) + " at row " +
                        std::to_string(k));
    if (k + 1 < n) c[k] = lower[k] / piv;
    x[k] = (x[k] - lower[k - 1] * x[k - 1]) / piv;
  }
  for (size_t k = n - 1; k-- > 0;) x[k] -= c[k] * x[k + 1];
}

}  // namespace

std::vector<double> solve_cyclic(const CyclicTridiagonal& sys, std::span<const double> rhs) {
  sys.validate();
  const size_t n = sys.size();
  if (rhs.size() != n)
    throw InvalidArgument("rhs size " + std::to_string(rhs.size()) + " != n " +
                          std::to_string(n));
  constexpr double kPivotFloor = 1e-14;

  // A = B + (1/gamma) u u^T with u = (gamma, 0, ..., 0, corner)
  const double corner = sys.off[0];
  const double gamma = (sys.diag[0] != 0.0) ? -sys.diag[0] : -1.0;

  std::vector<double> dg(sys.diag.begin(), sys.diag.end());
  dg[0] -= gamma;
  dg[n - 1] -= corner * corner / gamma;
  std::vector<double> lower(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) lower[k] = sys.off[k + 1];

  std::vector<double> y, q;
  thomas(dg, lower, rhs, y, kPivotFloor);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = corner;
  thomas(dg, lower, u, q, kPivotFloor);

  const double denom = gamma + (gamma * q[0] + corner * q[n - 1]);
  const double uscale = std::abs(gamma) + std::abs(corner);
  if (std::abs(denom) <= kPivotFloor * std::max(uscale, 1e-300))
    throw SolverError("near-singular system: corner correction denominator " +
                      std::to_string(denom));
  const double factor = (gamma * y[0] + corner * y[n - 1]) / denom;
  for (size_t k = 0; k < n; ++k) y[k] -= factor * q[k];
  return y;
}

std::vector<double> solve_dense(std::vector<double> m, std::vector<double> x, size_t n) {
  if (x.size() != n || m.size() != n * n) throw InvalidArgument("solve_dense size mismatch");
  double matrix_scale = 0.0;
  for (double v : m) matrix_scale = std::max(matrix_scale, std::abs(v));
  const double pivot_tol = static_cast<double>(n) * 2.3e-16 * matrix_scale;
  std::vector<size_t> idx(n);
  for (size_t k = 0; k < n; ++k) idx[k] = k;
  for (size_t col = 0; col < n; ++col) {
    size_t best = col;
    double bestval = std::abs(m[idx[col] * n + col]);
    for (size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(m[idx[r] * n + col]);
      if (v > bestval) {
        best = r;
        bestval = v;
      }
    }
    std::swap(idx[col], idx[best]);
    const double piv = m[idx[col] * n + col];
    if (std::abs(piv) <= pivot_tol || !std::isfinite(piv))
      throw SolverError("singular matrix: zero pivot in column " + std::to_string(col));
    for (size_t r = col + 1; r < n; ++r) {
      const double f = m[idx[r] * n + col] / piv;
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) m[idx[r] * n + c] -= f * m[idx[col] * n + c];
      x[idx[r]] -= f * x[idx[col]];
    }
  }
  std::vector<double> out(n);
  for (size_t k = n; k-- > 0;) {
    double s = x[idx[k]];
    for (size_t c = k + 1; c < n; ++c) s -= m[idx[k] * n + c] * out[c];
    out[k] = s / m[idx[k] * n + k];
  }
  return out;
}

std::vector<double> solve_dense(const CyclicTridiagonal& sys, std::span<const double> rhs) {
  sys.validate();
  if (rhs.size() != sys.size()) throw InvalidArgument("rhs size mismatch");
  return solve_dense(sys.to_dense(), std::vector<double>(rhs.begin(), rhs.end()), sys.size());
}

double residual_inf(const CyclicTridiagonal& sys, std::span<const double> x,
                    std::span<const double> rhs) {
  const size_t n = sys.size();
  double worst = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const size_t prev = (k + n - 1) % n;
    const size_t next = (k + 1) % n;
    const double r =
        sys.off[k] * x[prev] + sys.diag[k] * x[k] + sys.off[next] * x[next] - rhs[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace elastica
