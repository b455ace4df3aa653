#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

namespace {

std::vector<double> fourier_bumps(size_t n, std::mt19937_64& rng, double amplitude,
                                  double slope_limit) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<double> s(n, 0.0);
  for (int f = 1; f <= 4; ++f) {
    const double amp = amplitude / f * gauss(rng);
    const double ph = phase(rng);
    for (size_t k = 0; k < n; ++k)
      s[k] += amp * std::cos(kTwoPi * f * static_cast<double>(k) / n + ph);
  }
  // keep the turning angles away from zero: limit the discrete slope
  double worst = 0.0;
  for (size_t k = 0; k < n; ++k)
    worst = std::max(worst, std::abs(s[(k + 1) % n] - s[k]));
  const double limit = slope_limit * kTwoPi / static_cast<double>(n);
  if (worst > limit)
    for (double& v : s) v *= limit / worst;
  return s;
}

void corrupt_xi(std::vector<double>& xi) {
  double mx = 0.0;
  for (double v : xi) mx = std::max(mx, std::abs(v));
  xi[xi.size() / 2] += 0.05 * (mx > 0 ? mx : 1.0);
}

}  // namespace

std::vector<double> random_convex_theta(size_t n, std::mt19937_64& rng, double amplitude) {
  const std::vector<double> bump = fourier_bumps(n, rng, amplitude, 0.5);
  std::vector<double> theta(n);
  for (size_t k = 0; k < n; ++k)
    theta[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n) + bump[k];
  return close_angles(std::move(theta));
}

AnglePath random_gentle_path(size_t n, size_t nt, std::mt19937_64& rng,
                             double shape_amplitude, double time_amplitude) {
  const std::vector<double> shape = fourier_bumps(n, rng, shape_amplitude, 0.5);
  const std::vector<double> wave = fourier_bumps(n, rng, time_amplitude, 0.5);
  AnglePath path;
  path.n = n;
  path.nt = nt;
  path.rotation_number = 1;
  path.theta.resize((nt + 1) * n);
  for (size_t j = 0; j <= nt; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(nt);
    const double q = t * (1.0 - t);
    std::vector<double> theta(n);
    for (size_t k = 0; k < n; ++k)
      theta[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n) + shape[k] +
                 q * wave[k];
    theta = close_angles(std::move(theta));
    std::copy(theta.begin(), theta.end(), path.slice(j));
  }
  return path;
}

PathOfChains chains_from_angle_path(const AnglePath& angles) {
  std::vector<Chain> slices;
  slices.reserve(angles.nt + 1);
  for (size_t j = 0; j <= angles.nt; ++j) {
    std::span<const double> th(angles.slice(j), angles.n);
    slices.push_back(chain_from_angles(th, Vec2(0, 0)).chain);
  }
  return PathOfChains(std::move(slices), 1.0, 1.0);
}

double xi_fd_relative_error(const AnglePath& path, ElasticParams params, double h,
                            bool corrupt) {
  const size_t n = path.n, nt = path.nt;
  const PathDerivatives deriv = time_derivatives(path);
  // direction: the representative itself, windowed three slices clear of the
  // ends (the one-sided stencils there reach two slices in)
  std::vector<std::vector<double>> psi(nt + 1, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> xis(nt + 1);
  double scale = 0.0;
  for (size_t j = 3; j + 3 <= nt; ++j) {
    const SliceTrig trig =
        slice_trig(std::span<const double>(path.slice(j), n), path.rotation_number);
    xis[j] = compute_xi(trig, std::span<const double>(deriv.dot_slice(j), n),
                        std::span<const double>(deriv.ddot_slice(j), n),
                        std::span<const double>(deriv.ddelta_slice(j), n), params);
    if (corrupt) corrupt_xi(xis[j]);
    psi[j] = xis[j];
    for (double v : psi[j]) scale = std::max(scale, std::abs(v));
  }
  double pairing = 0.0;
  AnglePath plus = path, minus = path;
  for (size_t j = 3; j + 3 <= nt; ++j) {
    double s = 0.0;
    for (size_t k = 0; k < n; ++k) {
      psi[j][k] /= scale;
      s += psi[j][k] * xis[j][k];
      plus.theta[j * n + k] += h * psi[j][k];
      minus.theta[j * n + k] -= h * psi[j][k];
    }
    pairing += s / static_cast<double>(n) * path.dt();
  }
  const double fd = (path_energy(plus, params) - path_energy(minus, params)) / (2.0 * h);
  return std::abs(fd - pairing) / std::max(std::abs(fd), 1e-300);
}

double assembled_fd_relative_error(const AnglePath& path, ElasticParams params, double h,
                                   bool corrupt) {
  const size_t n = path.n, nt = path.nt;
  const PathOfChains chains = chains_from_angle_path(path);
  const PathDerivatives deriv = time_derivatives(path);

  std::vector<std::vector<double>> vphi(nt + 1, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> betas(nt + 1);
  double vmax = 0.0;
  for (size_t j = 3; j + 3 <= nt; ++j) {
    const SliceTrig trig =
        slice_trig(std::span<const double>(path.slice(j), n), path.rotation_number);
    std::vector<double> xi = compute_xi(trig, std::span<const double>(deriv.dot_slice(j), n),
                                        std::span<const double>(deriv.ddot_slice(j), n),
                                        std::span<const double>(deriv.ddelta_slice(j), n),
                                        params);
    if (corrupt) corrupt_xi(xi);
    betas[j] = xi_to_beta(trig, xi, params, DualGauge::Exact).beta;
    vphi[j] = project_closed_phi(trig, betas[j]);
    for (double v : vphi[j]) vmax = std::max(vmax, std::abs(v));
  }
  double pairing = 0.0;
  std::vector<std::vector<Vec2>> vraw(nt + 1, std::vector<Vec2>(n));
  for (size_t j = 3; j + 3 <= nt; ++j) {
    for (double& v : vphi[j]) v /= vmax;
    const SliceTrig trig =
        slice_trig(std::span<const double>(path.slice(j), n), path.rotation_number);
    vraw[j] = field_from_phi(trig, vphi[j]);
    const std::vector<Vec2> phv = project_horizontal(chains.slice(j), vphi[j], params);
    const std::vector<Vec2> ztilde = assemble_z(trig, betas[j], false);
    pairing += elastic_inner(phv, ztilde, chains.slice(j), params) * path.dt();
  }
  auto displaced = [&](double sign) {
    std::vector<Chain> slices;
    for (size_t j = 0; j <= nt; ++j) {
      std::vector<Vec2> verts = chains.slice(j).vertices();
      for (size_t k = 0; k < n; ++k) verts[k] += vraw[j][k] * (sign * h);
      slices.push_back(Chain(std::move(verts)));
    }
    return PathOfChains(std::move(slices), params.a, params.b);
  };
  const double fd =
      (path_energy(displaced(1.0), params) - path_energy(displaced(-1.0), params)) /
      (2.0 * h);
  return std::abs(fd - pairing) / std::max(std::abs(fd), 1e-300);
}

GradCheckReport run_gradient_checks(uint64_t seed, size_t n, size_t nt, ElasticParams params,
                                    bool corrupt) {
  if (n < 8 || nt < 8)
    throw InvalidArgument("gradient checks need n >= 8 and nt >= 8");
  std::mt19937_64 rng(seed);
  GradCheckReport report;
  auto record = [&](const std::string& name, double err, double tol) {
    const bool ok = std::isfinite(err) && err <= tol;
    report.entries.push_back({name, err, tol, ok});
    if (!ok) report.all_passed = false;
  };

  // constant path: zero energy and zero gradient, exactly
  {
    const Chain circle = generate_circle(n);
    std::vector<Chain> slices(nt + 1, circle);
    const PathOfChains constant(std::move(slices), params.a, params.b);
    const double e0 = path_energy(constant, params);
    const GradientField g = path_gradient(constant, params);
    record("constant-path-zero", std::max(std::abs(e0), g.max_displacement()), 1e-12);
  }

  record("xi-directional-derivative",
         xi_fd_relative_error(random_gentle_path(n, nt, rng), params, 1e-5, corrupt), 1e-3);

  // closed-form time derivative of the solved m against finite differences on
  // an analytic-in-t family of slices
  {
    std::vector<double> base(n), rho(n);
    const std::vector<double> bump = fourier_bumps(n, rng, 0.15, 0.5);
    const std::vector<double> wave = fourier_bumps(n, rng, 0.1, 0.5);
    for (size_t k = 0; k < n; ++k) {
      base[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n) + bump[k];
      rho[k] = wave[k];
    }
    const double t0 = 0.5;
    auto theta_at = [&](double t) {
      std::vector<double> th(n);
      const double q = t * (1.0 - t);
      for (size_t k = 0; k < n; ++k) th[k] = base[k] + q * rho[k];
      return th;
    };
    const double qd = 1.0 - 2.0 * t0;
    std::vector<double> td(n), tdd(n), ddel(n);
    for (size_t k = 0; k < n; ++k) {
      td[k] = qd * rho[k];
      tdd[k] = -2.0 * rho[k];
    }
    for (size_t k = 0; k < n; ++k) ddel[k] = td[k] - td[(k + n - 1) % n];
    std::vector<double> m, mdot;
    (void)compute_xi(slice_trig(theta_at(t0), 1), td, tdd, ddel, params, &m, &mdot);
    const double h = 1e-5;
    auto m_at = [&](double t) {
      std::vector<double> phik(n);
      const double q1 = 1.0 - 2.0 * t;
      for (size_t k = 0; k < n; ++k) phik[k] = q1 * rho[k];
      return horizontal_m(slice_trig(theta_at(t), 1), phik, params);
    };
    const std::vector<double> mp = m_at(t0 + h), mm = m_at(t0 - h);
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < n; ++k) {
      const double fd = (mp[k] - mm[k]) / (2.0 * h);
      num = std::max(num, std::abs(mdot[k] - fd));
      den = std::max(den, std::abs(fd));
    }
    record("mdot-closed-form", num / std::max(den, 1e-30), 1e-4);
  }

  // duality: the recovered beta pairs through the quotient metric exactly as
  // xi does through the flat product
  {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const SliceTrig trig = slice_trig(random_convex_theta(n, rng, 0.25), 1);
    std::vector<double> xi(n), alpha(n);
    for (size_t k = 0; k < n; ++k) {
      xi[k] = gauss(rng);
      alpha[k] = gauss(rng);
    }
    const BetaField bf = xi_to_beta(trig, xi, params, DualGauge::Exact);
    const double lhs = quotient_inner(trig, alpha, bf.beta, params);
    double rhs = 0.0;
    for (size_t k = 0; k < n; ++k) rhs += alpha[k] * xi[k];
    rhs /= static_cast<double>(n);
    record("duality-identity", std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-30), 1e-8);
  }

  record("assembled-gradient-pairing",
         assembled_fd_relative_error(random_gentle_path(n, nt, rng), params, 1e-6, corrupt),
         1e-3);

  return report;
}

}  // namespace elastica
