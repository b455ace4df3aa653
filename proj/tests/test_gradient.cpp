#include <doctest.h>

#include <random>

#include "core/gradcheck.hpp"
#include "core/path_gradient.hpp"
#include "support.hpp"

using namespace elastica;
using namespace elastica::testsupport;

namespace {

AnglePath constant_path(size_t n, size_t nt) {
  AnglePath p;
  p.n = n;
  p.nt = nt;
  p.rotation_number = 1;
  p.theta.resize((nt + 1) * n);
  for (size_t j = 0; j <= nt; ++j)
    for (size_t k = 0; k < n; ++k)
      p.theta[j * n + k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  return p;
}

}  // namespace

TEST_CASE("time derivatives") {
  SUBCASE("constant path has vanishing derivatives") {
    const AnglePath p = constant_path(12, 8);
    const PathDerivatives d = time_derivatives(p);
    for (double v : d.theta_dot) CHECK(v == 0.0);
    for (double v : d.theta_ddot) CHECK(v == 0.0);
    for (double v : d.delta_dot) CHECK(v == 0.0);
  }
  SUBCASE("linear-in-t paths differentiate exactly") {
    AnglePath p = constant_path(10, 8);
    const double c = 0.37;
    for (size_t j = 0; j <= 8; ++j)
      for (size_t k = 0; k < 10; ++k) p.theta[j * 10 + k] += c * (j / 8.0);
    const PathDerivatives d = time_derivatives(p);
    for (double v : d.theta_dot) CHECK(v == doctest::Approx(c).epsilon(1e-12));
    for (double v : d.theta_ddot) CHECK(std::abs(v) <= 1e-10);
  }
  SUBCASE("quadratic-in-t paths differentiate exactly") {
    AnglePath p = constant_path(10, 8);
    for (size_t j = 0; j <= 8; ++j) {
      const double t = j / 8.0;
      for (size_t k = 0; k < 10; ++k) p.theta[j * 10 + k] += 0.2 * t * t - 0.1 * t;
    }
    const PathDerivatives d = time_derivatives(p);
    for (size_t j = 0; j <= 8; ++j) {
      const double t = j / 8.0;
      CHECK(d.theta_dot[j * 10] == doctest::Approx(0.4 * t - 0.1).epsilon(1e-12));
      CHECK(d.theta_ddot[j * 10] == doctest::Approx(0.4).epsilon(1e-10));
    }
  }
  SUBCASE("second derivative error contracts about 4x per time refinement") {
    auto worst_err = [](size_t nt) {
      AnglePath p = constant_path(8, nt);
      for (size_t j = 0; j <= nt; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(nt);
        for (size_t k = 0; k < 8; ++k)
          p.theta[j * 8 + k] += 0.1 * std::sin(kTwoPi * t) * std::cos(kTwoPi * k / 8.0);
      }
      const PathDerivatives d = time_derivatives(p);
      double worst = 0.0;
      for (size_t j = 1; j < nt; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(nt);
        for (size_t k = 0; k < 8; ++k) {
          const double exact =
              -0.1 * kTwoPi * kTwoPi * std::sin(kTwoPi * t) * std::cos(kTwoPi * k / 8.0);
          worst = std::max(worst, std::abs(d.theta_ddot[j * 8 + k] - exact));
        }
      }
      return worst;
    };
    const double e64 = worst_err(64), e128 = worst_err(128);
    CHECK(e64 / e128 > 3.5);
    CHECK(e64 / e128 < 4.5);
  }
  SUBCASE("too few slices are rejected") {
    const AnglePath p = constant_path(8, 3);
    CHECK_THROWS_AS((void)time_derivatives(p), InvalidArgument);
  }
}

TEST_CASE("path energy") {
  const ElasticParams p11(1.0, 1.0);
  SUBCASE("constant path has zero energy, exactly") {
    const Chain circle = generate_circle(40);
    std::vector<Chain> slices(11, circle);
    CHECK(path_energy(PathOfChains(std::move(slices), 1, 1), p11) == 0.0);
  }
  SUBCASE("uniform base-point rotation costs the discrete floor a(2pi)^4/(8n^2)") {
    // the continuum value is zero; the chain quotient keeps a remainder that
    // vanishes as 1/n^2
    for (size_t n : {100, 200}) {
      const double e = path_energy(rotation_path(n, 20), p11);
      const double floor = std::pow(kTwoPi, 4) / (8.0 * static_cast<double>(n * n));
      CHECK(rel_err(e, floor) <= 1e-2);
    }
  }
  SUBCASE("bump path energy refines at second order in the time step") {
    // the time-difference stencils bias the energy by O(dt^2); at nt=20 that
    // is a few percent for this path, contracting 4x per refinement
    const Chain circle = generate_circle(100);
    const Chain peak = generate_ellipse(0.5, 100);
    auto at = [&](size_t nt) {
      return path_energy(build_bump_path(circle, peak, nt, sin2_profile), p11);
    };
    const double e20 = at(20), e40 = at(40), e400 = at(400);
    CHECK(e20 > 0.0);
    CHECK(rel_err(e20, e400) <= 5e-2);
    const double contraction = (e400 - e20) / (e400 - e40);
    CHECK(contraction > 3.0);
    CHECK(contraction < 5.0);
  }
  SUBCASE("per-slice integrand matches the trapezoid total") {
    std::mt19937_64 rng(2);
    const AnglePath path = random_gentle_path(30, 12, rng);
    std::vector<double> per;
    const double e = path_energy(path, p11, &per);
    REQUIRE(per.size() == 13);
    double acc = 0.0;
    for (size_t j = 0; j <= 12; ++j) acc += ((j == 0 || j == 12) ? 0.5 : 1.0) * per[j];
    CHECK(e == doctest::Approx(acc / 12.0).epsilon(1e-13));
  }
}

TEST_CASE("energy degeneracies and symmetries") {
  const ElasticParams p(1.0, 1.0);
  const Chain circle = generate_circle(60);
  const PathOfChains bump = build_bump_path(circle, generate_ellipse(0.7, 60), 12);
  const double base = path_energy(bump, p);
  SUBCASE("translation leaves the energy unchanged to subtraction roundoff") {
    // the energy sees only vertex differences; shifting all vertices rounds
    // those differences in the last bits, nothing more
    std::vector<Chain> slices;
    for (size_t j = 0; j <= 12; ++j) {
      std::vector<Vec2> verts = bump.slice(j).vertices();
      for (Vec2& v : verts) v += Vec2(2.5, -1.25);
      slices.push_back(Chain(std::move(verts)));
    }
    CHECK(rel_err(path_energy(PathOfChains(std::move(slices), 1, 1), p), base) <= 1e-13);
  }
  SUBCASE("global rotation changes the energy by at most 1e-10") {
    std::vector<Chain> slices;
    for (size_t j = 0; j <= 12; ++j) slices.push_back(rotated(bump.slice(j), 0.77));
    CHECK(rel_err(path_energy(PathOfChains(std::move(slices), 1, 1), p), base) <= 1e-10);
  }
  SUBCASE("common reindexing changes the energy by at most 1e-10") {
    std::vector<Chain> slices;
    for (size_t j = 0; j <= 12; ++j) slices.push_back(reindexed(bump.slice(j), 17));
    CHECK(rel_err(path_energy(PathOfChains(std::move(slices), 1, 1), p), base) <= 1e-10);
  }
}

TEST_CASE("xi is the L2 representative of the energy derivative") {
  std::mt19937_64 rng(5);
  const size_t n = 40, nt = 16;
  const ElasticParams p(1.4, 0.9);
  SUBCASE("constant path has zero xi") {
    const AnglePath path = constant_path(n, nt);
    const GradientField g = path_gradient(path, p);
    for (const SliceGradient& s : g.slices)
      for (double v : s.xi) CHECK(std::abs(v) <= 1e-12);
  }
  SUBCASE("finite differences along the windowed representative") {
    const AnglePath path = random_gentle_path(n, nt, rng);
    const PathDerivatives deriv = time_derivatives(path);
    std::vector<std::vector<double>> psi(nt + 1, std::vector<double>(n, 0.0));
    double scale = 0.0;
    std::vector<std::vector<double>> xis(nt + 1);
    for (size_t j = 3; j + 3 <= nt; ++j) {
      const SliceTrig trig =
          slice_trig(std::span<const double>(path.slice(j), n), path.rotation_number);
      xis[j] = compute_xi(trig, std::span<const double>(deriv.dot_slice(j), n),
                          std::span<const double>(deriv.ddot_slice(j), n),
                          std::span<const double>(deriv.ddelta_slice(j), n), p);
      psi[j] = xis[j];
      for (double v : psi[j]) scale = std::max(scale, std::abs(v));
    }
    double pairing = 0.0;
    AnglePath plus = path, minus = path;
    const double h = 1e-5;
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
    const double fd = (path_energy(plus, p) - path_energy(minus, p)) / (2 * h);
    CHECK(rel_err(pairing, fd) <= 1e-4);
  }
}

TEST_CASE("mdot closed form agrees with finite differences in t") {
  std::mt19937_64 rng(9);
  const size_t n = 36;
  const ElasticParams p(0.7, 1.3);
  const std::vector<double> base = random_convex_theta(n, rng, 0.2);
  std::vector<double> rho = random_scalars(n, rng, 0.1);
  auto theta_at = [&](double t) {
    std::vector<double> th = base;
    const double q = t * (1.0 - t);
    for (size_t k = 0; k < n; ++k) th[k] += q * rho[k];
    return th;
  };
  const double t0 = 0.4;
  const double qd = 1.0 - 2.0 * t0;
  std::vector<double> td(n), tdd(n), ddel(n);
  for (size_t k = 0; k < n; ++k) {
    td[k] = qd * rho[k];
    tdd[k] = -2.0 * rho[k];
  }
  for (size_t k = 0; k < n; ++k) ddel[k] = td[k] - td[(k + n - 1) % n];
  std::vector<double> m, mdot;
  (void)compute_xi(slice_trig(theta_at(t0), 1), td, tdd, ddel, p, &m, &mdot);
  const double h = 1e-5;
  auto m_at = [&](double t) {
    std::vector<double> phi(n);
    const double q1 = 1.0 - 2.0 * t;
    for (size_t k = 0; k < n; ++k) phi[k] = q1 * rho[k];
    return horizontal_m(slice_trig(theta_at(t), 1), phi, p);
  };
  const std::vector<double> mp = m_at(t0 + h), mm = m_at(t0 - h);
  double worst = 0.0, denom = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double fd = (mp[k] - mm[k]) / (2 * h);
    worst = std::max(worst, std::abs(fd - mdot[k]));
    denom = std::max(denom, std::abs(fd));
  }
  CHECK(worst / denom <= 1e-4);
}

TEST_CASE("dualization") {
  std::mt19937_64 rng(13);
  const ElasticParams p(1.1, 0.6);
  SUBCASE("zero xi maps to zero beta and h in both gauges") {
    const SliceTrig trig = slice_trig(random_convex_theta(20, rng, 0.2), 1);
    for (DualGauge g : {DualGauge::MeanZero, DualGauge::Exact}) {
      const BetaField bf = xi_to_beta(trig, std::vector<double>(20, 0.0), p, g);
      for (double v : bf.beta) CHECK(std::abs(v) <= 1e-13);
      for (double v : bf.h) CHECK(std::abs(v) <= 1e-13);
    }
  }
  SUBCASE("duality identity at several sizes") {
    for (size_t n : {6u, 40u, 100u}) {
      for (int trial = 0; trial < 5; ++trial) {
        const SliceTrig trig = slice_trig(random_convex_theta(n, rng, 0.25), 1);
        const std::vector<double> xi = random_scalars(n, rng);
        const std::vector<double> alpha = random_scalars(n, rng);
        const BetaField bf = xi_to_beta(trig, xi, p, DualGauge::Exact);
        const double lhs = quotient_inner(trig, alpha, bf.beta, p);
        double rhs = 0.0;
        for (size_t k = 0; k < n; ++k) rhs += alpha[k] * xi[k];
        rhs /= static_cast<double>(n);
        CHECK(rel_err(lhs, rhs) <= 1e-8);
      }
    }
  }
  SUBCASE("h solves its stated cyclic relation") {
    const size_t n = 24;
    const SliceTrig trig = slice_trig(random_convex_theta(n, rng, 0.25), 1);
    const std::vector<double> xi = random_scalars(n, rng);
    const BetaField bf = xi_to_beta(trig, xi, p, DualGauge::Exact);
    for (size_t k = 0; k < n; ++k) {
      const size_t prev = (k + n - 1) % n, next = (k + 1) % n;
      const double lhs = xi[prev] * trig.sind[k] / static_cast<double>(n);
      const double rhs = p.a * (1 + trig.cosd[k] * trig.cosd[k]) * bf.h[k] -
                         p.a * trig.cosd[k] * bf.h[prev] -
                         p.a * trig.cosd[next] * bf.h[next];
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
  SUBCASE("round trip: dual of a field's pairing form recovers the field") {
    // forward: beta -> (h = vertical part of the beta-field, xi = b(beta - n h sin d))
    // backward: xi_to_beta; the pair must invert exactly
    for (size_t n : {12u, 60u}) {
      const std::vector<double> theta = random_convex_theta(n, rng, 0.3);
      const SliceTrig trig = slice_trig(theta, 1);
      const std::vector<double> beta = random_scalars(n, rng);
      const std::vector<double> hf = horizontal_m(trig, beta, p);
      std::vector<double> xi(n);
      for (size_t k = 0; k < n; ++k) {
        const size_t q = (k + 1) % n;
        xi[k] = p.b * (beta[k] - static_cast<double>(n) * hf[q] * trig.sind[q]);
      }
      const BetaField bf = xi_to_beta(trig, xi, p, DualGauge::Exact);
      double worst = 0.0, scale = 0.0;
      for (size_t k = 0; k < n; ++k) {
        worst = std::max(worst, std::abs(bf.beta[k] - beta[k]));
        scale = std::max(scale, std::abs(beta[k]));
      }
      CHECK(worst <= 1e-7 * scale);
    }
  }
}

TEST_CASE("assembled gradient field") {
  std::mt19937_64 rng(21);
  const ElasticParams p(1.0, 1.0);
  SUBCASE("constant path has a zero field") {
    const Chain circle = generate_circle(30);
    std::vector<Chain> slices(9, circle);
    const GradientField g = path_gradient(PathOfChains(std::move(slices), 1, 1), p);
    CHECK(g.max_displacement() <= 1e-12);
    CHECK(g.path_norm() <= 1e-12);
  }
  SUBCASE("closure holds for any beta") {
    const SliceTrig trig = slice_trig(random_convex_theta(50, rng, 0.3), 1);
    const std::vector<double> beta = random_scalars(50, rng, 10.0);
    const std::vector<Vec2> z = assemble_z(trig, beta);
    // wrap increment: z_{n+1} = z_n + inc_n - mean == z_0
    Vec2 mean;
    for (size_t k = 0; k < 50; ++k) {
      const Vec2 nk = Vec2(std::cos(trig.theta[k]), std::sin(trig.theta[k])).perp();
      mean += nk * (beta[k] / 50.0);
    }
    mean = mean / 50.0;
    const Vec2 nk_last = Vec2(std::cos(trig.theta[49]), std::sin(trig.theta[49])).perp();
    const Vec2 wrap = z[49] + nk_last * (beta[49] / 50.0) - mean;
    CHECK((wrap - z[0]).norm() <= 1e-12);
    // the correction is the same constant at every increment
    Vec2 first_corr, any_corr;
    for (size_t k = 0; k + 1 < 50; ++k) {
      const Vec2 nk = Vec2(std::cos(trig.theta[k]), std::sin(trig.theta[k])).perp();
      const Vec2 corr = (z[k + 1] - z[k]) * 50.0 - nk * beta[k];
      if (k == 0) first_corr = corr;
      any_corr = corr;
      CHECK((corr - first_corr).norm() <= 1e-10);
    }
    (void)any_corr;
  }
  SUBCASE("endpoint slices carry zero gradient") {
    const Chain circle = generate_circle(40);
    const PathOfChains bump = build_bump_path(circle, generate_ellipse(0.6, 40), 10);
    const GradientField g = path_gradient(bump, p);
    for (const Vec2& v : g.slices.front().z) CHECK((v == Vec2{}));
    for (const Vec2& v : g.slices.back().z) CHECK((v == Vec2{}));
  }
  SUBCASE("full pipeline matches vertex-space finite differences") {
    const GradCheckReport r = run_gradient_checks(2024, 48, 16, p);
    for (const GradCheckEntry& e : r.entries) {
      INFO(e.name, " err=", e.max_rel_error);
      CHECK(e.passed);
    }
  }
  SUBCASE("corrupted xi is caught and named") {
    const GradCheckReport r = run_gradient_checks(2024, 48, 16, p, true);
    CHECK_FALSE(r.all_passed);
    bool named = false;
    for (const GradCheckEntry& e : r.entries)
      if (!e.passed &&
          (e.name == "xi-directional-derivative" || e.name == "assembled-gradient-pairing"))
        named = true;
    CHECK(named);
  }
}

TEST_CASE("gradient equivariance and scaling") {
  std::mt19937_64 rng(33);
  const size_t n = 40, nt = 12;
  const ElasticParams p(2.0, 0.5);
  const Chain circle = generate_circle(n);
  const PathOfChains bump = build_bump_path(circle, generate_ellipse(0.75, n), nt);
  const GradientField g0 = path_gradient(bump, p);
  SUBCASE("rotating the path rotates every z") {
    const double ang = 0.9;
    std::vector<Chain> slices;
    for (size_t j = 0; j <= nt; ++j) slices.push_back(rotated(bump.slice(j), ang));
    const GradientField g1 = path_gradient(PathOfChains(std::move(slices), 1, 1), p);
    const double cs = std::cos(ang), sn = std::sin(ang);
    double worst = 0.0, scale = 0.0;
    for (size_t j = 0; j <= nt; ++j)
      for (size_t k = 0; k < n; ++k) {
        const Vec2 z = g0.slices[j].z[k];
        const Vec2 want{cs * z.x - sn * z.y, sn * z.x + cs * z.y};
        worst = std::max(worst, (g1.slices[j].z[k] - want).norm());
        scale = std::max(scale, z.norm());
      }
    CHECK(worst <= 1e-10 * std::max(scale, 1.0));
  }
  SUBCASE("reindexing the path shifts beta, xi, m, h by the same offset") {
    const size_t shift = 13;
    std::vector<Chain> slices;
    for (size_t j = 0; j <= nt; ++j) slices.push_back(reindexed(bump.slice(j), shift));
    const GradientField g1 = path_gradient(PathOfChains(std::move(slices), 1, 1), p);
    double worst = 0.0, scale = 0.0;
    for (size_t j = 1; j < nt; ++j)
      for (size_t k = 0; k < n; ++k) {
        worst = std::max(
            {worst, std::abs(g1.slices[j].beta[k] - g0.slices[j].beta[(k + shift) % n]),
             std::abs(g1.slices[j].xi[k] - g0.slices[j].xi[(k + shift) % n]),
             std::abs(g1.slices[j].m[k] - g0.slices[j].m[(k + shift) % n]),
             std::abs(g1.slices[j].h[k] - g0.slices[j].h[(k + shift) % n])});
        scale = std::max(scale, std::abs(g0.slices[j].beta[k]));
      }
    CHECK(worst <= 1e-10 * std::max(scale, 1.0));
  }
  SUBCASE("xi, beta and E are jointly homogeneous of degree one in (a, b)") {
    const double lambda = 7.5;
    const ElasticParams scaled(lambda * p.a, lambda * p.b);
    const double e0 = path_energy(bump, p);
    const double e1 = path_energy(bump, scaled);
    CHECK(rel_err(e1, lambda * e0) <= 1e-11);
    const GradientField g1 = path_gradient(bump, scaled);
    double worst = 0.0, scale = 0.0;
    for (size_t j = 1; j < nt; ++j)
      for (size_t k = 0; k < n; ++k) {
        worst = std::max(worst,
                         std::abs(g1.slices[j].xi[k] - lambda * g0.slices[j].xi[k]));
        // beta is invariant: xi/b and n h sin(d) both scale by lambda/lambda
        worst = std::max(worst, std::abs(g1.slices[j].beta[k] - g0.slices[j].beta[k]));
        scale = std::max(scale, std::abs(g0.slices[j].xi[k]) * lambda);
      }
    CHECK(worst <= 1e-10 * std::max(scale, 1.0));
  }
  SUBCASE("gradient vanishes on the constant and rotation geodesics") {
    const PathOfChains rot = rotation_path(100, 20);
    const GradientField g = path_gradient(rot, ElasticParams(1.0, 1.0));
    CHECK(g.path_norm() <= 1e-6 * 100.0);
    CHECK(g.max_displacement() <= 1e-6 * 100.0);
  }
}

TEST_CASE("gradient localizes at the middle of a bump path") {
  const size_t n = 100, nt = 20;
  const Chain circle = generate_circle(n);
  const PathOfChains bump = build_bump_path(circle, generate_ellipse(0.8, n), nt);
  const GradientField g = path_gradient(bump, ElasticParams(1.0, 1.0));
  const double mid = std::sqrt(g.slices[nt / 2].quotient_norm2);
  const double quarter = std::sqrt(g.slices[nt / 4].quotient_norm2);
  CHECK(mid >= 5.0 * quarter);
}
